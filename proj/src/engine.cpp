#include "stord/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stord/parallel.hpp"

namespace stord
{
void Scenario::validate() const
{
    window.validate();
    stord::validate(process);
    pathloss.validate();
    if (pathloss.dimension != window.dimension)
    {
        throw std::invalid_argument("scenario '" + label + "': path loss and window dimensions differ");
    }
    if (!(noise >= 0) || !std::isfinite(noise))
    {
        throw std::invalid_argument("scenario '" + label + "': noise power must be finite and >= 0");
    }
    if (auto const* b = std::get_if<Binomial>(&process); b && b->radius > window.radius)
    {
        throw std::invalid_argument("scenario '" + label + "': binomial radius exceeds window radius");
    }
}

ReplicateResult make_replicate_result(double interference, double desired_power, double noise)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    auto const ratio = [](double num, double den) {
        if (den > 0)
        {
            return num / den;
        }
        return num > 0 ? inf : 0.0;
    };
    ReplicateResult r;
    r.interference = interference;
    r.desired_power = desired_power;
    r.sir = ratio(desired_power, interference);
    r.sinr = ratio(desired_power, noise + interference);
    r.capacity_term = std::log2(1.0 + r.sinr);
    return r;
}

double interference_of(PointPattern const& pattern,
                       FadingModel const& fading,
                       PathLoss const& pl,
                       Xoshiro256& fading_rng,
                       Xoshiro256& redraw_rng,
                       std::int64_t* redraws)
{
    double total = 0;
    bool const singular = pl.singular();
    for (auto const& p : pattern.points)
    {
        double r2 = norm_squared(p);
        if (singular && r2 == 0)
        {
            // Probability-zero event on the continuous annulus; re-draw the location.
            while (r2 == 0)
            {
                r2 = norm_squared(sample_uniform_point(pattern.window, redraw_rng));
                if (redraws)
                {
                    ++*redraws;
                }
            }
        }
        total += fading.sample(fading_rng) * pl.gain_from_squared(r2);
    }
    return total;
}

std::vector<ReplicateResult> simulate_replicates(Scenario const& sc,
                                                 std::int64_t n,
                                                 std::uint64_t seed,
                                                 RunOptions const& options,
                                                 SimulationStats* stats)
{
    if (n < 1)
    {
        throw std::invalid_argument("simulate: replicate count must be >= 1");
    }
    sc.validate();
    PathLoss pl = sc.pathloss;
    pl.prepare();

    std::vector<ReplicateResult> results(static_cast<std::size_t>(n));
    std::vector<std::int64_t> redraws(static_cast<std::size_t>(n), 0);
    parallel_for(static_cast<std::size_t>(n), options.threads, [&](std::size_t i) {
        auto pattern_rng = make_stream(seed, i, StreamPurpose::pattern);
        auto fading_rng = make_stream(seed, i, StreamPurpose::interferer_fading);
        auto desired_rng = make_stream(seed, i, StreamPurpose::desired_link);
        auto redraw_rng = make_stream(seed, i, StreamPurpose::redraw);
        auto const pattern = sample(sc.process, sc.window, pattern_rng);
        double const interference
            = interference_of(pattern, sc.interferer_fading, pl, fading_rng, redraw_rng, &redraws[i]);
        double const hs = sc.desired_fading.sample(desired_rng);
        results[i] = make_replicate_result(interference, hs, sc.noise);
    });
    if (stats)
    {
        stats->singular_redraws = 0;
        for (auto r : redraws)
        {
            stats->singular_redraws += r;
        }
    }
    return results;
}

std::vector<double> simulate_interference(Scenario const& sc, std::int64_t n, std::uint64_t seed, RunOptions const& options)
{
    return interference_column(simulate_replicates(sc, n, seed, options));
}

std::vector<double> interference_column(std::span<ReplicateResult const> results)
{
    std::vector<double> out;
    out.reserve(results.size());
    for (auto const& r : results)
    {
        out.push_back(r.interference);
    }
    return out;
}

std::vector<double> sir_column(std::span<ReplicateResult const> results)
{
    std::vector<double> out;
    out.reserve(results.size());
    for (auto const& r : results)
    {
        out.push_back(r.sir);
    }
    return out;
}

std::vector<double> capacity_column(std::span<ReplicateResult const> results)
{
    std::vector<double> out;
    out.reserve(results.size());
    for (auto const& r : results)
    {
        out.push_back(r.capacity_term);
    }
    return out;
}

EmpiricalCurve empirical_cdf(std::span<double const> samples, std::span<double const> grid, double confidence)
{
    if (samples.empty())
    {
        throw std::invalid_argument("empirical_cdf: empty sample set");
    }
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    EmpiricalCurve curve;
    curve.abscissae.assign(grid.begin(), grid.end());
    curve.n_replicates = static_cast<std::int64_t>(samples.size());
    double const eps = dkw_epsilon(samples.size(), confidence);
    for (double x : grid)
    {
        curve.values.push_back(cdf_sorted(sorted, x));
        curve.half_widths.push_back(eps);
    }
    curve.validate();
    return curve;
}

EmpiricalCurve outage_curve(std::span<ReplicateResult const> results, std::span<double const> x_grid, double confidence)
{
    if (results.size() < 100)
    {
        throw std::invalid_argument("outage_curve: at least 100 replicates are required for a DKW band");
    }
    for (std::size_t i = 0; i < x_grid.size(); ++i)
    {
        if (!(x_grid[i] > 0) || (i > 0 && x_grid[i] < x_grid[i - 1]))
        {
            throw std::invalid_argument("outage_curve: x grid must be positive and sorted");
        }
    }
    auto const sir = sir_column(results);
    return empirical_cdf(sir, x_grid, confidence);
}

EmpiricalCurve outage_curve(Scenario const& sc,
                            std::int64_t n,
                            std::span<double const> x_grid,
                            std::uint64_t seed,
                            RunOptions const& options)
{
    if (n < 100)
    {
        throw std::invalid_argument("outage_curve: at least 100 replicates are required for a DKW band");
    }
    auto const results = simulate_replicates(sc, n, seed, options);
    return outage_curve(results, x_grid);
}

CapacityEstimate ergodic_capacity(std::span<ReplicateResult const> results, double confidence)
{
    if (results.size() < 100)
    {
        throw std::invalid_argument("ergodic_capacity: at least 100 replicates are required");
    }
    auto const terms = capacity_column(results);
    auto const est = mean_and_standard_error(terms);
    double const z = normal_quantile(0.5 + 0.5 * confidence);
    return {est.mean, z * est.standard_error, static_cast<std::int64_t>(results.size())};
}

CapacityEstimate ergodic_capacity(Scenario const& sc,
                                  std::int64_t n,
                                  std::uint64_t seed,
                                  RunOptions const& options,
                                  double confidence)
{
    if (n < 100)
    {
        throw std::invalid_argument("ergodic_capacity: at least 100 replicates are required");
    }
    auto const results = simulate_replicates(sc, n, seed, options);
    return ergodic_capacity(results, confidence);
}

std::optional<MeanEstimate> interference_mean(Scenario const& sc, std::span<double const> interference)
{
    if (sc.pathloss.singular())
    {
        return std::nullopt;
    }
    return mean_and_standard_error(interference);
}

}  // namespace stord
