#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "channel.hpp"
#include "engine.hpp"
#include "pathloss.hpp"
#include "pointprocess.hpp"

namespace stord
{
//---------------------------------------------------------------------------//
// Verdicts
//---------------------------------------------------------------------------//

enum class Relation
{
    left_smaller,
    right_smaller,
    indistinguishable,
    crossing,
};

std::string_view to_string(Relation r);
Relation relation_from_string(std::string_view text);

//---------------------------------------------------------------------------//
/*!
 * Outcome of comparing two laws on a grid.
 *
 * margins[i] is the raw signed gap at grid[i]: CCDF_X − CCDF_Y for the usual
 * stochastic order, L_X − L_Y for the Laplace transform order. lower/upper
 * bound that gap at the simultaneous confidence level. A point counts as
 * evidence only when the whole band lies on one side of zero.
 */
struct OrderVerdict
{
    std::string order;  //!< "st", "lt" or "lf"
    Relation relation = Relation::indistinguishable;
    std::vector<double> grid;
    std::vector<double> margins;
    std::vector<double> lower;
    std::vector<double> upper;
    double confidence = 0.95;
    std::uint64_t seed = 0;
    bool probe_limited = false;
    //! Per-side curves on grid (CCDF or LT) with that side's share of the band.
    EmpiricalCurve left_curve;
    EmpiricalCurve right_curve;
};

//! Defaults: 50 log-spaced points on [1e-2, 1e2].
std::vector<double> default_s_grid();

//! 60 log-spaced points spanning the pooled 0.5th–99.5th finite percentiles.
std::vector<double> default_x_grid(std::span<double const> x, std::span<double const> y);

inline constexpr std::size_t min_order_samples = 1000;

//---------------------------------------------------------------------------//
/*!
 * Usual stochastic order from empirical CCDFs with DKW bands.
 *
 * Each sample's band holds with probability confidence/2-split so the
 * combined band ε_X + ε_Y is simultaneous over the grid at the stated level.
 * An empty grid selects default_x_grid.
 */
OrderVerdict check_st_order(std::span<double const> x,
                            std::span<double const> y,
                            std::span<double const> x_grid = {},
                            double confidence = 0.95);

struct LtOrderOptions
{
    double confidence = 0.95;
    int n_bootstrap = 500;
    std::uint64_t seed = 0;
    //! Resample the same indices in both sets (requires equal sizes).
    bool paired = false;
    int threads = 0;
};

//---------------------------------------------------------------------------//
/*!
 * Laplace transform order from bootstrap percentile bands of L_X − L_Y.
 *
 * Bands are Bonferroni-corrected over the grid: each side uses the
 * (1 − confidence)/G tail quantile of the bootstrap gap distribution.
 */
OrderVerdict check_lt_order(std::span<double const> x,
                            std::span<double const> y,
                            std::span<double const> s_grid = {},
                            LtOrderOptions const& options = {});

//---------------------------------------------------------------------------//
// Laplace functional probes
//---------------------------------------------------------------------------//

//! Radial test function u(x) = h_x·g(‖x‖), with h ≡ 1 when marks is empty.
struct ProbeFunction
{
    std::string name;
    PathLoss pathloss;
    std::optional<FadingModel> marks;
};

//! Finite surrogate for "all nonnegative u"; each u is scaled by every s in s_grid.
struct LfProbe
{
    std::vector<ProbeFunction> functions;
    std::vector<double> s_grid;

    //! Pure gain δ=4, pure gain δ=6, Rayleigh-marked gain δ=4 (a = b = 1).
    static LfProbe default_probe(int dimension);
};

struct LfVerdict
{
    OrderVerdict aggregate;
    std::vector<std::string> function_names;
    std::vector<OrderVerdict> per_function;
    //! Max over probe functions and s of λ∫_{B_0(r)}[1 − E e^{−s u}], when a binomial process is compared.
    std::optional<double> binomial_condition;
    std::optional<std::int64_t> binomial_count;
};

struct LfOrderOptions
{
    double confidence = 0.95;
    int n_bootstrap = 500;
    int threads = 0;
};

//! Combine per-function verdicts: a common direction or crossing.
Relation aggregate_relations(std::span<Relation const> relations);

//! Σ_{x∈Φ} u(x) samples for each probe function, n replicates of spec.
std::vector<std::vector<double>> simulate_probe_sums(ProcessSpec const& spec,
                                                     LfProbe const& probe,
                                                     Window const& window,
                                                     std::int64_t n,
                                                     std::uint64_t seed,
                                                     int threads = 0);

LfVerdict check_lf_order(ProcessSpec const& left,
                         ProcessSpec const& right,
                         LfProbe const& probe,
                         Window const& window,
                         std::int64_t n,
                         std::uint64_t seed,
                         LfOrderOptions const& options = {});

//! λ∫_{guard ≤ ‖x‖ ≤ r}[1 − E e^{−s·h·g(‖x‖)}] dx for one probe function.
double lf_exponent(double intensity, ProbeFunction const& f, double s, int dimension, double inner, double outer);

//---------------------------------------------------------------------------//
// Analytic transforms
//---------------------------------------------------------------------------//

//! s ↦ exp(−λ c_d E[h^α] Γ(1−α) s^α), α = d/δ ∈ (0,1): singular path loss over R^d.
std::function<double(double)> ppp_singular_lt(double intensity, double delta, int dimension, double frac_moment);

//! exp(−λ∫_w [1 − e^{−u(‖x‖)}] dx) for a radial nonnegative u.
double ppp_laplace_functional(double intensity,
                              std::function<double(double)> const& u,
                              Window const& window,
                              std::span<double const> breakpoints = {});

//! Exact finite-window PPP interference transform exp(−λ∫_w[1 − L_h(s g)] dx).
double ppp_interference_laplace(double intensity, FadingModel const& fading, PathLoss const& pl, Window const& window, double s);

}  // namespace stord
