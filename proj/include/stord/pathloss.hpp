#pragma once

#include <optional>

#include "geometry.hpp"

namespace stord
{
//---------------------------------------------------------------------------//
/*!
 * Path-loss family g(r) = (a + b·r^δ)^{-1}.
 *
 * a = 0 is the singular model, a = 1 the bounded one. When b was obtained
 * from the mean-power compensation against exponent δ₁, compensated_from
 * records δ₁ so the configuration can be written back as "auto(δ₁)".
 */
struct PathLoss
{
    int a = 1;
    double b = 1.0;
    double delta = 4.0;
    int dimension = 2;
    std::optional<double> compensated_from;

    //! Throws std::invalid_argument unless a ∈ {0,1}, b > 0, δ > d, d ∈ {2,3}.
    void validate() const;

    bool singular() const { return a == 0; }

    //! g(r); throws std::domain_error at r = 0 for the singular model.
    double gain(double r) const;

    //! g evaluated from the squared distance, avoiding a square root for even δ.
    double gain_from_squared(double r2) const
    {
        double const rd = even_exponent_ > 0 ? power_even(r2) : std::pow(r2, 0.5 * delta);
        return 1.0 / (a + b * rd);
    }

    //! Build with b = compensation_b(δ₁, δ, d).
    static PathLoss compensated(double delta1, double delta, int dimension);

    bool operator==(PathLoss const& other) const
    {
        return a == other.a && b == other.b && delta == other.delta
               && dimension == other.dimension && compensated_from == other.compensated_from;
    }

    //! Cache the integer half-exponent when δ is an even integer; call after edits.
    void prepare();

  private:
    double power_even(double r2) const
    {
        double result = 1.0;
        for (int i = 0; i < even_exponent_; ++i)
        {
            result *= r2;
        }
        return result;
    }

    int even_exponent_ = 0;
};

//! Factory that validates and prepares.
PathLoss make_pathloss(int a, double b, double delta, int dimension);

//! Free-function form of PathLoss::gain.
inline double gain(PathLoss const& pl, double r)
{
    return pl.gain(r);
}

//---------------------------------------------------------------------------//
/*!
 * Mean-power compensation parameter.
 *
 * Returns b such that (a=1, b, δ₂) has the same Campbell mean over R^d as
 * (a=1, 1, δ₁).
 */
double compensation_b(double delta1, double delta2, int dimension);

//---------------------------------------------------------------------------//
/*!
 * Mean interference by Campbell's theorem: λ·E[h]·∫ g(‖x‖) dx.
 *
 * With a window the radial integral over [guard, R] is evaluated by adaptive
 * quadrature (absolute 1e-10, relative 1e-8). Without one the integral over
 * R^d uses the closed form and requires a = 1.
 */
double campbell_mean(double intensity,
                     double mean_power,
                     PathLoss const& pl,
                     std::optional<Window> const& window = std::nullopt);

//! Closed-form ∫_{R^d} g(‖x‖) dx for a = 1.
double campbell_integral_infinite(PathLoss const& pl);

}  // namespace stord
