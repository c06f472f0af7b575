#pragma once

#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rng.hpp"

namespace stord
{
struct EmpiricalCurve;

//---------------------------------------------------------------------------//
// Fading model alternatives
//---------------------------------------------------------------------------//

struct Deterministic
{
    double power = 1.0;
    bool operator==(Deterministic const&) const = default;
};

//! Exponential power with unit mean.
struct RayleighPower
{
    bool operator==(RayleighPower const&) const = default;
};

//! Gamma(m, 1/m) power (Nakagami-m envelope), unit mean.
struct NakagamiPower
{
    double m = 1.0;
    bool operator==(NakagamiPower const&) const = default;
};

//! Non-central chi-square power with LoS factor K, unit mean.
struct RiceanPower
{
    double K = 0.0;
    bool operator==(RiceanPower const&) const = default;
};

//! Lognormal shadowing 10^{σ_dB·Z/10}; normalized rescales to unit mean.
struct LognormalShadow
{
    double sigma_db = 0.0;
    bool normalized = true;

    //! Natural-log standard deviation σ_dB·ln10/10.
    double sigma_ln() const;
    double mean() const;
    bool operator==(LognormalShadow const&) const = default;
};

class FadingModel;

//! Independent product of a multipath model and lognormal shadowing.
struct Composite
{
    std::shared_ptr<FadingModel const> multipath;
    LognormalShadow shadow;
    bool operator==(Composite const& other) const;
};

//---------------------------------------------------------------------------//
/*!
 * Distribution of channel power h.
 *
 * Construct through the named factories, which validate parameters. The
 * Ricean factory additionally cross-checks its closed-form Laplace transform
 * against quadrature of the density and throws on disagreement.
 */
class FadingModel
{
  public:
    using Variant = std::variant<Deterministic, RayleighPower, NakagamiPower, RiceanPower, Composite>;

    //! Unit-power Rayleigh.
    FadingModel();

    static FadingModel deterministic(double power);
    static FadingModel rayleigh();
    static FadingModel nakagami(double m);
    static FadingModel ricean(double K);
    static FadingModel composite(FadingModel const& multipath, LognormalShadow shadow);

    Variant const& alternative() const { return model_; }
    std::string name() const;

    double mean() const;

    //! E[e^{-sh}]; composite models integrate over the shadowing law.
    double laplace(double s) const;

    //! E[h^α] for α > 0.
    double fractional_moment(double alpha) const;

    double sample(Xoshiro256& rng) const;

    bool operator==(FadingModel const&) const = default;

  private:
    explicit FadingModel(Variant model);

    Variant model_;
};

//! One variate of channel power.
inline double sample_power(FadingModel const& model, Xoshiro256& rng)
{
    return model.sample(rng);
}

//! (1 + s/m)^{-m}.
double laplace_nakagami(double m, double s);

//! ((1+K)/(1+K+s))·exp(−K s/(1+K+s)).
double laplace_ricean(double K, double s);

//! Power density (K+1) e^{−(K+1)x−K} I_0(2√(K(K+1)x)), evaluated with scaled Bessel.
double ricean_density(double K, double x);

//! ∫ e^{−sx} f(x) dx of the Ricean power density by adaptive quadrature.
double laplace_ricean_quadrature(double K, double s);

//! Γ(m+α)/(Γ(m)·m^α) for 0 < α < 1.
double fractional_moment_nakagami(double m, double alpha);

//! Empirical E[e^{-sX}] on s_grid with bootstrap percentile half-widths.
EmpiricalCurve laplace_empirical(std::span<double const> samples,
                                 std::span<double const> s_grid,
                                 std::uint64_t seed = 0,
                                 int n_bootstrap = 500,
                                 double confidence = 0.95);

}  // namespace stord
