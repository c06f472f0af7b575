#include "stord/pathloss.hpp"

#include <cmath>
#include <stdexcept>

#include "stord/numerics.hpp"

namespace stord
{
void PathLoss::validate() const
{
    if (a != 0 && a != 1)
    {
        throw std::invalid_argument("path loss a must be 0 or 1");
    }
    if (!(b > 0) || !std::isfinite(b))
    {
        throw std::invalid_argument("path loss b must be positive");
    }
    if (dimension != 2 && dimension != 3)
    {
        throw std::invalid_argument("path loss dimension must be 2 or 3");
    }
    if (!(delta > dimension) || !std::isfinite(delta))
    {
        throw std::invalid_argument("path loss exponent must exceed the dimension");
    }
}

void PathLoss::prepare()
{
    even_exponent_ = 0;
    double const half = 0.5 * delta;
    if (half == std::floor(half) && half >= 1 && half <= 16)
    {
        even_exponent_ = static_cast<int>(half);
    }
}

double PathLoss::gain(double r) const
{
    if (!(r >= 0))
    {
        throw std::domain_error("path loss distance must be >= 0");
    }
    if (r == 0 && a == 0)
    {
        throw std::domain_error("singular path loss is unbounded at r = 0");
    }
    return 1.0 / (a + b * std::pow(r, delta));
}

PathLoss make_pathloss(int a, double b, double delta, int dimension)
{
    PathLoss pl;
    pl.a = a;
    pl.b = b;
    pl.delta = delta;
    pl.dimension = dimension;
    pl.validate();
    pl.prepare();
    return pl;
}

PathLoss PathLoss::compensated(double delta1, double delta, int dimension)
{
    PathLoss pl = make_pathloss(1, compensation_b(delta1, delta, dimension), delta, dimension);
    pl.compensated_from = delta1;
    return pl;
}

double compensation_b(double delta1, double delta2, int dimension)
{
    double const d = dimension;
    if (dimension < 1 || !(delta1 > d) || !(delta2 > d))
    {
        throw std::domain_error("compensation_b: exponents must exceed the dimension");
    }
    double const a1 = d / delta1;
    double const a2 = d / delta2;
    // Work in logs; Γ(1-α)Γ(α) blows up as α → 0 or 1.
    double const log_ratio = std::log(delta2) + log_gamma_fn(1.0 - a1) + log_gamma_fn(a1)
                             - std::log(delta1) - log_gamma_fn(1.0 - a2) - log_gamma_fn(a2);
    return std::exp(-(delta2 / d) * log_ratio);
}

double campbell_integral_infinite(PathLoss const& pl)
{
    pl.validate();
    if (pl.a != 1)
    {
        throw std::domain_error("singular path loss has no finite mean interference over R^d");
    }
    double const d = pl.dimension;
    double const alpha = d / pl.delta;
    double const surface = d * unit_ball_volume(pl.dimension);
    return surface / pl.delta * std::pow(pl.b, -alpha) * gamma_fn(alpha) * gamma_fn(1.0 - alpha);
}

double campbell_mean(double intensity, double mean_power, PathLoss const& pl, std::optional<Window> const& window)
{
    pl.validate();
    if (!(intensity >= 0) || !(mean_power >= 0))
    {
        throw std::invalid_argument("campbell_mean: intensity and mean power must be >= 0");
    }
    if (!window)
    {
        double const integral = campbell_integral_infinite(pl);
        return intensity * mean_power * integral;
    }
    window->validate();
    if (window->dimension != pl.dimension)
    {
        throw std::invalid_argument("campbell_mean: window and path loss dimensions differ");
    }
    if (pl.a == 0 && window->guard_radius == 0)
    {
        throw std::domain_error("singular path loss has no finite mean without a guard zone");
    }
    if (intensity == 0 || mean_power == 0)
    {
        return 0.0;
    }
    double const surface = pl.dimension * unit_ball_volume(pl.dimension);
    int const dm1 = pl.dimension - 1;
    auto const integrand = [&](double r) { return std::pow(r, dm1) / (pl.a + pl.b * std::pow(r, pl.delta)); };

    // Split at the knee r = b^{-1/δ} so both pieces are smooth for the rule.
    double const knee = std::pow(pl.b, -1.0 / pl.delta);
    double const lo = window->guard_radius;
    double const hi = window->radius;
    double integral = 0;
    if (knee > lo && knee < hi)
    {
        integral = integrate(integrand, lo, knee).value + integrate(integrand, knee, hi).value;
    }
    else
    {
        integral = integrate(integrand, lo, hi).value;
    }
    return intensity * mean_power * surface * integral;
}

}  // namespace stord
