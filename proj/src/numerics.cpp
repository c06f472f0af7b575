#include "stord/numerics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace stord
{
double unit_ball_volume(int dim)
{
    if (dim < 1)
    {
        throw std::invalid_argument("unit_ball_volume: dimension must be >= 1");
    }
    double const half = 0.5 * dim;
    return std::pow(std::numbers::pi, half) / boost::math::tgamma(half + 1.0);
}

double gamma_fn(double x)
{
    return boost::math::tgamma(x);
}

double log_gamma_fn(double x)
{
    return boost::math::lgamma(x);
}

double bessel_i0_scaled(double z)
{
    if (z < 0)
    {
        throw std::domain_error("bessel_i0_scaled: negative argument");
    }
    if (z < 500.0)
    {
        return std::exp(-z) * boost::math::cyl_bessel_i(0, z);
    }
    // Hankel asymptotic series; for z >= 500 the terms fall below 1e-16
    // after a handful of steps.
    double term = 1.0;
    double sum = 1.0;
    double const eight_z = 8.0 * z;
    for (int k = 1; k < 30; ++k)
    {
        double const odd = 2.0 * k - 1.0;
        term *= odd * odd / (k * eight_z);
        sum += term;
        if (term < 1e-17 * sum)
        {
            break;
        }
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * z);
}

QuadratureResult integrate(std::function<double(double)> const& f,
                           double lower,
                           double upper,
                           QuadratureTolerance tol)
{
    if (!(upper > lower))
    {
        if (upper == lower)
        {
            return {};
        }
        throw std::invalid_argument("integrate: upper limit below lower limit");
    }
    double error = 0;
    double l1 = 0;
    double const value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        f, lower, upper, 20, tol.relative * 1e-2, &error, &l1);
    double const allowed = std::max(tol.absolute, tol.relative * std::abs(value));
    if (!std::isfinite(value) || error > allowed)
    {
        std::ostringstream msg;
        msg << "integrate: tolerance not met on [" << lower << ", " << upper
            << "]: value " << value << ", error estimate " << error;
        throw std::runtime_error(msg.str());
    }
    return {value, error};
}

}  // namespace stord
