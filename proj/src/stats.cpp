#include "stord/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>

#include "stord/parallel.hpp"
#include "stord/rng.hpp"

namespace stord
{
void EmpiricalCurve::validate() const
{
    if (values.size() != abscissae.size() || half_widths.size() != abscissae.size())
    {
        throw std::logic_error("EmpiricalCurve: unequal column lengths");
    }
    if (!std::is_sorted(abscissae.begin(), abscissae.end()))
    {
        throw std::logic_error("EmpiricalCurve: abscissae not sorted");
    }
}

std::vector<double> log_space(double lo, double hi, int n)
{
    if (!(lo > 0) || !(hi >= lo) || n < 1)
    {
        throw std::invalid_argument("log_space: need 0 < lo <= hi and n >= 1");
    }
    std::vector<double> out(static_cast<std::size_t>(n));
    if (n == 1)
    {
        out[0] = lo;
        return out;
    }
    double const a = std::log(lo);
    double const step = (std::log(hi) - a) / (n - 1);
    for (int i = 0; i < n; ++i)
    {
        out[static_cast<std::size_t>(i)] = std::exp(a + step * i);
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

double quantile_sorted(std::span<double const> sorted, double p)
{
    if (sorted.empty())
    {
        throw std::invalid_argument("quantile_sorted: empty data");
    }
    p = std::clamp(p, 0.0, 1.0);
    double const h = p * static_cast<double>(sorted.size() - 1);
    auto const lo = static_cast<std::size_t>(std::floor(h));
    auto const hi = std::min(lo + 1, sorted.size() - 1);
    double const frac = h - static_cast<double>(lo);
    if (frac == 0.0)
    {
        return sorted[lo];
    }
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double normal_quantile(double p)
{
    return boost::math::quantile(boost::math::normal_distribution<double>{}, p);
}

double dkw_epsilon(std::size_t n, double confidence)
{
    if (n == 0 || !(confidence > 0 && confidence < 1))
    {
        throw std::invalid_argument("dkw_epsilon: need n > 0 and confidence in (0,1)");
    }
    return std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * static_cast<double>(n)));
}

double ccdf_sorted(std::span<double const> sorted, double x)
{
    auto const it = std::upper_bound(sorted.begin(), sorted.end(), x);
    return static_cast<double>(sorted.end() - it) / static_cast<double>(sorted.size());
}

double cdf_sorted(std::span<double const> sorted, double x)
{
    return 1.0 - ccdf_sorted(sorted, x);
}

MeanEstimate mean_and_standard_error(std::span<double const> values)
{
    if (values.size() < 2)
    {
        throw std::invalid_argument("mean_and_standard_error: need at least two values");
    }
    double mean = 0;
    double m2 = 0;
    std::size_t k = 0;
    for (double v : values)
    {
        ++k;
        double const delta = v - mean;
        mean += delta / static_cast<double>(k);
        m2 += delta * (v - mean);
    }
    double const n = static_cast<double>(values.size());
    double const variance = m2 / (n - 1);
    return {mean, std::sqrt(variance / n)};
}

//---------------------------------------------------------------------------//
double LaplaceBootstrap::standard_error(std::size_t j) const
{
    std::vector<double> column(static_cast<std::size_t>(n_bootstrap));
    for (int b = 0; b < n_bootstrap; ++b)
    {
        column[static_cast<std::size_t>(b)] = replicate(b, j);
    }
    return mean_and_standard_error(column).standard_error * std::sqrt(static_cast<double>(n_bootstrap));
}

double LaplaceBootstrap::percentile(std::size_t j, double p) const
{
    std::vector<double> column(static_cast<std::size_t>(n_bootstrap));
    for (int b = 0; b < n_bootstrap; ++b)
    {
        column[static_cast<std::size_t>(b)] = replicate(b, j);
    }
    std::sort(column.begin(), column.end());
    return quantile_sorted(column, p);
}

namespace
{
void check_inputs(std::span<double const> samples, std::span<double const> s_grid)
{
    if (samples.empty())
    {
        throw std::invalid_argument("empirical Laplace transform: empty sample set");
    }
    if (s_grid.empty())
    {
        throw std::invalid_argument("empirical Laplace transform: empty s grid");
    }
    for (double s : s_grid)
    {
        if (!(s > 0) || !std::isfinite(s))
        {
            throw std::invalid_argument("empirical Laplace transform: s grid must be positive");
        }
    }
    for (double x : samples)
    {
        if (std::isnan(x) || x < 0)
        {
            throw std::invalid_argument("empirical Laplace transform: samples must be nonnegative");
        }
    }
}

std::vector<double> transform_matrix(std::span<double const> samples, std::span<double const> s_grid)
{
    std::size_t const g = s_grid.size();
    std::vector<double> table(samples.size() * g);
    for (std::size_t i = 0; i < samples.size(); ++i)
    {
        for (std::size_t j = 0; j < g; ++j)
        {
            table[i * g + j] = std::exp(-s_grid[j] * samples[i]);
        }
    }
    return table;
}

constexpr int replicate_batch = 16;
}  // namespace

std::vector<double> empirical_laplace(std::span<double const> samples, std::span<double const> s_grid)
{
    check_inputs(samples, s_grid);
    std::vector<double> out(s_grid.size(), 0.0);
    for (double x : samples)
    {
        for (std::size_t j = 0; j < s_grid.size(); ++j)
        {
            out[j] += std::exp(-s_grid[j] * x);
        }
    }
    for (double& v : out)
    {
        v /= static_cast<double>(samples.size());
    }
    return out;
}

LaplaceBootstrap bootstrap_laplace(std::span<double const> samples,
                                   std::span<double const> s_grid,
                                   int n_bootstrap,
                                   std::uint64_t seed,
                                   int threads)
{
    check_inputs(samples, s_grid);
    if (n_bootstrap < 1)
    {
        throw std::invalid_argument("bootstrap_laplace: n_bootstrap must be >= 1");
    }
    std::size_t const n = samples.size();
    std::size_t const g = s_grid.size();
    auto const table = transform_matrix(samples, s_grid);

    LaplaceBootstrap result;
    result.grid.assign(s_grid.begin(), s_grid.end());
    result.n_bootstrap = n_bootstrap;
    result.estimate.assign(g, 0.0);
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = 0; j < g; ++j)
        {
            result.estimate[j] += table[i * g + j];
        }
    }
    for (double& v : result.estimate)
    {
        v /= static_cast<double>(n);
    }

    result.replicates.assign(static_cast<std::size_t>(n_bootstrap) * g, 0.0);
    std::size_t const batches = (static_cast<std::size_t>(n_bootstrap) + replicate_batch - 1) / replicate_batch;

    // Resample counts per index turn the bootstrap mean into one sequential
    // pass over the table for a whole batch of replicates.
    parallel_for(batches, threads, [&](std::size_t batch) {
        int const first = static_cast<int>(batch) * replicate_batch;
        int const count = std::min(replicate_batch, n_bootstrap - first);
        std::vector<std::uint32_t> counts(static_cast<std::size_t>(count) * n, 0);
        for (int k = 0; k < count; ++k)
        {
            auto rng = make_stream(seed, static_cast<std::uint64_t>(first + k), StreamPurpose::bootstrap);
            std::uint32_t* c = counts.data() + static_cast<std::size_t>(k) * n;
            for (std::size_t i = 0; i < n; ++i)
            {
                ++c[uniform_index(rng, n)];
            }
        }
        std::vector<double> acc(static_cast<std::size_t>(count) * g, 0.0);
        for (std::size_t i = 0; i < n; ++i)
        {
            double const* row = table.data() + i * g;
            for (int k = 0; k < count; ++k)
            {
                std::uint32_t const c = counts[static_cast<std::size_t>(k) * n + i];
                if (c == 0)
                {
                    continue;
                }
                double const w = static_cast<double>(c);
                double* a = acc.data() + static_cast<std::size_t>(k) * g;
                for (std::size_t j = 0; j < g; ++j)
                {
                    a[j] += w * row[j];
                }
            }
        }
        for (int k = 0; k < count; ++k)
        {
            for (std::size_t j = 0; j < g; ++j)
            {
                result.replicates[static_cast<std::size_t>(first + k) * g + j]
                    = acc[static_cast<std::size_t>(k) * g + j] / static_cast<double>(n);
            }
        }
    });
    return result;
}

}  // namespace stord
