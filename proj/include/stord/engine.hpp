#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "channel.hpp"
#include "pathloss.hpp"
#include "pointprocess.hpp"
#include "stats.hpp"

namespace stord
{
//---------------------------------------------------------------------------//
/*!
 * Everything that fixes one interference regime: where interferers are,
 * how their power fades, how it decays with distance, and the desired link.
 */
struct Scenario
{
    ProcessSpec process = Poisson{1.0};
    Window window;
    FadingModel interferer_fading;
    PathLoss pathloss;
    FadingModel desired_fading;
    double noise = 0.0;
    std::string label = "scenario";

    //! Throws std::invalid_argument when components are inconsistent.
    void validate() const;
};

struct ReplicateResult
{
    double interference = 0;
    double sir = 0;
    double sinr = 0;
    double capacity_term = 0;
    double desired_power = 0;
};

//! Execution knobs; threads = 0 means all hardware threads.
struct RunOptions
{
    int threads = 0;
};

struct SimulationStats
{
    //! Points whose distance underflowed to 0 under singular path loss and were re-drawn.
    std::int64_t singular_redraws = 0;
};

//! SIR/SINR/capacity from one replicate's interference and desired power.
ReplicateResult make_replicate_result(double interference, double desired_power, double noise);

//! Interference of one pattern: Σ h_x·g(‖x‖) with h drawn from fading_rng.
double interference_of(PointPattern const& pattern,
                       FadingModel const& fading,
                       PathLoss const& pl,
                       Xoshiro256& fading_rng,
                       Xoshiro256& redraw_rng,
                       std::int64_t* redraws = nullptr);

//---------------------------------------------------------------------------//
/*!
 * n i.i.d. replicates of the scenario.
 *
 * Replicate i draws its pattern, interferer fades and desired-link power from
 * make_stream(seed, i, purpose) for the pattern, interferer_fading and
 * desired_link purposes. Two scenarios run with the same seed therefore share
 * point patterns and desired-link uniforms (common random numbers).
 */
std::vector<ReplicateResult> simulate_replicates(Scenario const& sc,
                                                 std::int64_t n,
                                                 std::uint64_t seed,
                                                 RunOptions const& options = {},
                                                 SimulationStats* stats = nullptr);

std::vector<double> simulate_interference(Scenario const& sc,
                                          std::int64_t n,
                                          std::uint64_t seed,
                                          RunOptions const& options = {});

//! Extract one column.
std::vector<double> interference_column(std::span<ReplicateResult const> results);
std::vector<double> sir_column(std::span<ReplicateResult const> results);
std::vector<double> capacity_column(std::span<ReplicateResult const> results);

//! Empirical CDF on grid with DKW half-widths.
EmpiricalCurve empirical_cdf(std::span<double const> samples,
                             std::span<double const> grid,
                             double confidence = 0.95);

//! Empirical SIR CDF F(x) = #{SIR <= x}/n on x_grid; rejects n < 100.
EmpiricalCurve outage_curve(Scenario const& sc,
                            std::int64_t n,
                            std::span<double const> x_grid,
                            std::uint64_t seed,
                            RunOptions const& options = {});

//! Same, from precomputed replicates.
EmpiricalCurve outage_curve(std::span<ReplicateResult const> results,
                            std::span<double const> x_grid,
                            double confidence = 0.95);

struct CapacityEstimate
{
    double mean = 0;
    double half_width = 0;
    std::int64_t n = 0;
};

//! E[log2(1 + h_S/(W+I))] with normal-approximation half-width; n >= 100.
CapacityEstimate ergodic_capacity(Scenario const& sc,
                                  std::int64_t n,
                                  std::uint64_t seed,
                                  RunOptions const& options = {},
                                  double confidence = 0.95);

CapacityEstimate ergodic_capacity(std::span<ReplicateResult const> results, double confidence = 0.95);

//! Sample mean of interference; nullopt for singular path loss (no finite mean).
std::optional<MeanEstimate> interference_mean(Scenario const& sc, std::span<double const> interference);

}  // namespace stord
