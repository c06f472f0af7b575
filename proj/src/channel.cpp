#include "stord/channel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/random/exponential_distribution.hpp>
#include <boost/random/normal_distribution.hpp>

#include "stord/numerics.hpp"
#include "stord/stats.hpp"
#include "stord/variates.hpp"

namespace stord
{
namespace
{
template<class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};

constexpr double ricean_gate_tolerance = 1e-8;

void check_s(double s)
{
    if (!(s >= 0) || std::isnan(s))
    {
        throw std::domain_error("Laplace transform argument s must be >= 0");
    }
}

// Integrate a function weighted by the Ricean power density over [0, ∞),
// split around the unit-mean bulk so the peak is resolved for large K.
double integrate_ricean(double K, std::function<double(double)> const& weight)
{
    double const spread = std::sqrt(2.0 * K + 1.0) / (K + 1.0);
    double const lo = std::max(0.0, 1.0 - 10.0 * spread);
    double const hi = 1.0 + 10.0 * spread;
    auto const integrand = [&](double x) { return weight(x) * ricean_density(K, x); };
    QuadratureTolerance const tol{1e-14, 1e-12};
    double total = integrate(integrand, lo, hi, tol).value;
    if (lo > 0)
    {
        total += integrate(integrand, 0.0, lo, tol).value;
    }
    total += integrate(integrand, hi, infinity, tol).value;
    return total;
}

// Expectation over Z ~ N(0,1) of f(exp(σ Z)).
double integrate_lognormal(double sigma, std::function<double(double)> const& f)
{
    if (sigma == 0)
    {
        return f(1.0);
    }
    double const c = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    auto const integrand = [&](double z) { return c * std::exp(-0.5 * z * z) * f(std::exp(sigma * z)); };
    return integrate(integrand, -12.0, 12.0, {1e-13, 1e-11}).value;
}

}  // namespace

//---------------------------------------------------------------------------//
double LognormalShadow::sigma_ln() const
{
    return sigma_db * std::numbers::ln10 / 10.0;
}

double LognormalShadow::mean() const
{
    if (normalized)
    {
        return 1.0;
    }
    double const s = sigma_ln();
    return std::exp(0.5 * s * s);
}

bool Composite::operator==(Composite const& other) const
{
    if (!(shadow == other.shadow))
    {
        return false;
    }
    if (!multipath || !other.multipath)
    {
        return multipath == other.multipath;
    }
    return *multipath == *other.multipath;
}

//---------------------------------------------------------------------------//
FadingModel::FadingModel() : model_(RayleighPower{}) {}

FadingModel::FadingModel(Variant model) : model_(std::move(model)) {}

FadingModel FadingModel::deterministic(double power)
{
    if (!(power >= 0) || !std::isfinite(power))
    {
        throw std::invalid_argument("deterministic fading power must be finite and >= 0");
    }
    return FadingModel{Deterministic{power}};
}

FadingModel FadingModel::rayleigh()
{
    return FadingModel{RayleighPower{}};
}

FadingModel FadingModel::nakagami(double m)
{
    if (!(m >= 0.5) || !std::isfinite(m))
    {
        throw std::invalid_argument("Nakagami m must be >= 0.5");
    }
    return FadingModel{NakagamiPower{m}};
}

FadingModel FadingModel::ricean(double K)
{
    if (!(K >= 0) || !std::isfinite(K))
    {
        throw std::invalid_argument("Ricean K must be >= 0");
    }
    for (double s : {0.1, 1.0, 10.0})
    {
        double const closed = laplace_ricean(K, s);
        double const numeric = laplace_ricean_quadrature(K, s);
        if (std::abs(closed - numeric) > ricean_gate_tolerance)
        {
            std::ostringstream msg;
            msg << "Ricean Laplace transform cross-check failed for K=" << K << ", s=" << s
                << ": closed form " << closed << " vs quadrature " << numeric;
            throw std::logic_error(msg.str());
        }
    }
    return FadingModel{RiceanPower{K}};
}

FadingModel FadingModel::composite(FadingModel const& multipath, LognormalShadow shadow)
{
    if (!(shadow.sigma_db >= 0) || !std::isfinite(shadow.sigma_db))
    {
        throw std::invalid_argument("shadowing sigma_dB must be >= 0");
    }
    return FadingModel{Composite{std::make_shared<FadingModel const>(multipath), shadow}};
}

std::string FadingModel::name() const
{
    return std::visit(overloaded{
                          [](Deterministic const&) { return std::string("deterministic"); },
                          [](RayleighPower const&) { return std::string("rayleigh"); },
                          [](NakagamiPower const&) { return std::string("nakagami"); },
                          [](RiceanPower const&) { return std::string("ricean"); },
                          [](Composite const&) { return std::string("composite"); },
                      },
                      model_);
}

double FadingModel::mean() const
{
    return std::visit(overloaded{
                          [](Deterministic const& d) { return d.power; },
                          [](RayleighPower const&) { return 1.0; },
                          [](NakagamiPower const&) { return 1.0; },
                          [](RiceanPower const&) { return 1.0; },
                          [](Composite const& c) { return c.multipath->mean() * c.shadow.mean(); },
                      },
                      model_);
}

double FadingModel::laplace(double s) const
{
    check_s(s);
    return std::visit(overloaded{
                          [s](Deterministic const& d) { return std::exp(-s * d.power); },
                          [s](RayleighPower const&) { return 1.0 / (1.0 + s); },
                          [s](NakagamiPower const& n) { return laplace_nakagami(n.m, s); },
                          [s](RiceanPower const& r) { return laplace_ricean(r.K, s); },
                          [s](Composite const& c) {
                              double const scale = 1.0 / std::exp(c.shadow.normalized
                                                                      ? 0.5 * c.shadow.sigma_ln() * c.shadow.sigma_ln()
                                                                      : 0.0);
                              auto const& base = *c.multipath;
                              return integrate_lognormal(c.shadow.sigma_ln(),
                                                         [&](double x) { return base.laplace(s * x * scale); });
                          },
                      },
                      model_);
}

double FadingModel::fractional_moment(double alpha) const
{
    if (!(alpha > 0))
    {
        throw std::domain_error("fractional moment order must be positive");
    }
    return std::visit(overloaded{
                          [alpha](Deterministic const& d) { return std::pow(d.power, alpha); },
                          [alpha](RayleighPower const&) { return gamma_fn(1.0 + alpha); },
                          [alpha](NakagamiPower const& n) {
                              return std::exp(log_gamma_fn(n.m + alpha) - log_gamma_fn(n.m)
                                              - alpha * std::log(n.m));
                          },
                          [alpha](RiceanPower const& r) {
                              return integrate_ricean(r.K, [alpha](double x) { return std::pow(x, alpha); });
                          },
                          [alpha](Composite const& c) {
                              double const s = c.shadow.sigma_ln();
                              double shadow = std::exp(0.5 * alpha * alpha * s * s);
                              if (c.shadow.normalized)
                              {
                                  shadow *= std::exp(-0.5 * alpha * s * s);
                              }
                              return c.multipath->fractional_moment(alpha) * shadow;
                          },
                      },
                      model_);
}

double FadingModel::sample(Xoshiro256& rng) const
{
    switch (model_.index())
    {
        case 0:
            return std::get<Deterministic>(model_).power;
        case 1: {
            boost::random::exponential_distribution<double> exp1(1.0);
            return exp1(rng);
        }
        case 2: {
            double const m = std::get<NakagamiPower>(model_).m;
            return sample_gamma(m, 1.0 / m, rng);
        }
        case 3: {
            double const K = std::get<RiceanPower>(model_).K;
            double const los = std::sqrt(K / (K + 1.0));
            double const sd = std::sqrt(0.5 / (K + 1.0));
            boost::random::normal_distribution<double> normal(0.0, sd);
            double const re = los + normal(rng);
            double const im = normal(rng);
            return re * re + im * im;
        }
        default: {
            auto const& c = std::get<Composite>(model_);
            double const h = c.multipath->sample(rng);
            double const s = c.shadow.sigma_ln();
            boost::random::normal_distribution<double> normal(0.0, 1.0);
            double x = std::exp(s * normal(rng));
            if (c.shadow.normalized)
            {
                x *= std::exp(-0.5 * s * s);
            }
            return h * x;
        }
    }
}

//---------------------------------------------------------------------------//
double laplace_nakagami(double m, double s)
{
    if (!(m >= 0.5))
    {
        throw std::domain_error("laplace_nakagami: m must be >= 0.5");
    }
    check_s(s);
    return std::exp(-m * std::log1p(s / m));
}

double laplace_ricean(double K, double s)
{
    if (!(K >= 0))
    {
        throw std::domain_error("laplace_ricean: K must be >= 0");
    }
    check_s(s);
    double const denom = 1.0 + K + s;
    return (1.0 + K) / denom * std::exp(-K * s / denom);
}

double ricean_density(double K, double x)
{
    if (x < 0)
    {
        return 0.0;
    }
    double const z = 2.0 * std::sqrt(K * (K + 1.0) * x);
    // -(K+1)x - K + z = -(sqrt((K+1)x) - sqrt(K))^2, which stays O(1) near the bulk.
    double const root = std::sqrt((K + 1.0) * x) - std::sqrt(K);
    return (K + 1.0) * std::exp(-root * root) * bessel_i0_scaled(z);
}

double laplace_ricean_quadrature(double K, double s)
{
    if (!(K >= 0))
    {
        throw std::domain_error("laplace_ricean_quadrature: K must be >= 0");
    }
    check_s(s);
    return integrate_ricean(K, [s](double x) { return std::exp(-s * x); });
}

double fractional_moment_nakagami(double m, double alpha)
{
    if (!(m >= 0.5))
    {
        throw std::domain_error("fractional_moment_nakagami: m must be >= 0.5");
    }
    if (!(alpha > 0 && alpha < 1))
    {
        throw std::domain_error("fractional_moment_nakagami: alpha must lie in (0,1)");
    }
    return FadingModel::nakagami(m).fractional_moment(alpha);
}

EmpiricalCurve laplace_empirical(std::span<double const> samples,
                                 std::span<double const> s_grid,
                                 std::uint64_t seed,
                                 int n_bootstrap,
                                 double confidence)
{
    auto const boot = bootstrap_laplace(samples, s_grid, n_bootstrap, seed);
    EmpiricalCurve curve;
    curve.abscissae = boot.grid;
    curve.values = boot.estimate;
    curve.n_replicates = static_cast<std::int64_t>(samples.size());
    double const tail = 0.5 * (1.0 - confidence);
    for (std::size_t j = 0; j < boot.grid.size(); ++j)
    {
        curve.half_widths.push_back(0.5 * (boot.percentile(j, 1.0 - tail) - boot.percentile(j, tail)));
    }
    return curve;
}

}  // namespace stord
