#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace stord
{
//---------------------------------------------------------------------------//
/*!
 * A sampled function (CDF, CCDF, or Laplace transform) with pointwise
 * confidence half-widths.
 */
struct EmpiricalCurve
{
    std::vector<double> abscissae;
    std::vector<double> values;
    std::vector<double> half_widths;
    std::int64_t n_replicates = 0;

    //! Throws std::logic_error on unequal lengths or unsorted abscissae.
    void validate() const;
};

//! n points log-spaced on [lo, hi], lo > 0.
std::vector<double> log_space(double lo, double hi, int n);

//! Type-7 (linear interpolation) quantile of sorted data.
double quantile_sorted(std::span<double const> sorted, double p);

//! Standard normal quantile.
double normal_quantile(double p);

//! Dvoretzky–Kiefer–Wolfowitz (Massart) two-sided band half-width.
double dkw_epsilon(std::size_t n, double confidence);

//! Fraction of sorted samples strictly greater than x.
double ccdf_sorted(std::span<double const> sorted, double x);

//! Fraction of sorted samples at most x.
double cdf_sorted(std::span<double const> sorted, double x);

struct MeanEstimate
{
    double mean = 0;
    double standard_error = 0;
};

MeanEstimate mean_and_standard_error(std::span<double const> values);

//---------------------------------------------------------------------------//
/*!
 * Nonparametric bootstrap of the empirical Laplace transform.
 *
 * Resample b draws n indices from make_stream(seed, b, bootstrap); two calls
 * with equal seed and equal n therefore resample identical indices, which is
 * how paired (common-random-number) samples are bootstrapped jointly.
 */
struct LaplaceBootstrap
{
    std::vector<double> grid;
    std::vector<double> estimate;    //!< per grid point
    std::vector<double> replicates;  //!< replicate b, grid j at [b·G + j]
    int n_bootstrap = 0;

    double replicate(int b, std::size_t j) const
    {
        return replicates[static_cast<std::size_t>(b) * grid.size() + j];
    }

    //! Bootstrap standard deviation at grid point j.
    double standard_error(std::size_t j) const;

    //! Percentile of the bootstrap distribution at grid point j.
    double percentile(std::size_t j, double p) const;
};

//! Plain empirical Laplace transform mean of e^{-s x}.
std::vector<double> empirical_laplace(std::span<double const> samples, std::span<double const> s_grid);

LaplaceBootstrap bootstrap_laplace(std::span<double const> samples,
                                   std::span<double const> s_grid,
                                   int n_bootstrap,
                                   std::uint64_t seed,
                                   int threads = 0);

}  // namespace stord
