#pragma once

#include <functional>
#include <limits>

namespace stord
{
//! Volume of the unit ball in R^d: π^{d/2} / Γ(d/2 + 1).
double unit_ball_volume(int dim);

//! Γ(x) for x > 0.
double gamma_fn(double x);

//! log Γ(x) for x > 0.
double log_gamma_fn(double x);

//! Exponentially scaled modified Bessel function e^{-z} I_0(z), z ≥ 0.
double bessel_i0_scaled(double z);

//---------------------------------------------------------------------------//
/*!
 * Tolerance contract for adaptive integration.
 *
 * The result is accepted when the error estimate is within
 * max(absolute, relative · |integral|).
 */
struct QuadratureTolerance
{
    double absolute = 1e-10;
    double relative = 1e-8;
};

struct QuadratureResult
{
    double value = 0;
    double error_estimate = 0;
};

//---------------------------------------------------------------------------//
/*!
 * Adaptive Gauss–Kronrod integral of f over [lower, upper].
 *
 * upper may be +infinity. Throws std::runtime_error if the tolerance
 * contract cannot be met.
 */
QuadratureResult integrate(std::function<double(double)> const& f,
                           double lower,
                           double upper,
                           QuadratureTolerance tol = {});

inline constexpr double infinity = std::numeric_limits<double>::infinity();

}  // namespace stord
