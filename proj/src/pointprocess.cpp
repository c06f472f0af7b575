#include "stord/pointprocess.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include <boost/random/normal_distribution.hpp>
#include <boost/random/poisson_distribution.hpp>

#include "stord/csv.hpp"
#include "stord/numerics.hpp"
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

std::int64_t sample_poisson_count(double mean, Xoshiro256& rng)
{
    if (mean <= 0)
    {
        return 0;
    }
    boost::random::poisson_distribution<std::int64_t, double> dist(mean);
    return dist(rng);
}

void require(bool condition, char const* message)
{
    if (!condition)
    {
        throw std::invalid_argument(message);
    }
}

Point displacement(Dispersion const& kernel, int dimension, Xoshiro256& rng)
{
    if (kernel.kind == Dispersion::Kind::gaussian)
    {
        boost::random::normal_distribution<double> normal(0.0, kernel.scale);
        Point p{};
        for (int i = 0; i < dimension; ++i)
        {
            p[i] = normal(rng);
        }
        return p;
    }
    return sample_uniform_point(dimension, 0.0, kernel.scale, rng);
}

}  // namespace

//---------------------------------------------------------------------------//
void Window::validate() const
{
    require(dimension == 2 || dimension == 3, "window dimension must be 2 or 3");
    require(std::isfinite(radius) && radius > 0, "window radius must be positive");
    require(guard_radius >= 0, "guard radius must be nonnegative");
    require(guard_radius < radius, "guard radius must be smaller than window radius");
}

double Window::volume() const
{
    return unit_ball_volume(dimension)
           * (std::pow(radius, dimension) - std::pow(guard_radius, dimension));
}

//---------------------------------------------------------------------------//
double law_mean(MixedPoisson const& spec)
{
    return std::visit(overloaded{
                          [](DiscreteMixture const& m) {
                              double mean = 0;
                              for (auto const& [x, p] : m.atoms)
                              {
                                  mean += x * p;
                              }
                              return mean;
                          },
                          [](GammaMixture const& g) { return g.shape * g.scale; },
                      },
                      spec.intensity_law);
}

void validate(ProcessSpec const& spec)
{
    std::visit(
        overloaded{
            [](Poisson const& p) {
                require(std::isfinite(p.intensity) && p.intensity > 0,
                        "Poisson intensity must be positive");
            },
            [](NeymanScott const& ns) {
                require(ns.parent_intensity > 0, "parent intensity must be positive");
                require(ns.mean_daughters > 0, "mean daughter count must be positive");
                require(ns.dispersion.scale > 0, "dispersion scale must be positive");
            },
            [](MixedPoisson const& mp) {
                require(mp.intensity > 0, "mixed Poisson mean intensity must be positive");
                std::visit(overloaded{
                               [](DiscreteMixture const& m) {
                                   require(!m.atoms.empty(), "mixture needs at least one atom");
                                   double total = 0;
                                   for (auto const& [x, p] : m.atoms)
                                   {
                                       require(x >= 0, "mixture intensities must be nonnegative");
                                       require(p >= 0, "mixture weights must be nonnegative");
                                       total += p;
                                   }
                                   require(std::abs(total - 1.0) <= 1e-9,
                                           "mixture weights must sum to 1");
                               },
                               [](GammaMixture const& g) {
                                   require(g.shape > 0 && g.scale > 0,
                                           "gamma mixture shape and scale must be positive");
                               },
                           },
                           mp.intensity_law);
                require(std::abs(law_mean(mp) - mp.intensity) <= 1e-9 * mp.intensity,
                        "intensity law mean differs from declared intensity");
            },
            [](Binomial const& b) {
                require(b.count >= 1, "binomial point count must be >= 1");
                require(b.radius > 0, "binomial radius must be positive");
            },
        },
        spec);
}

std::string process_label(ProcessSpec const& spec)
{
    return std::visit(overloaded{
                          [](Poisson const&) { return std::string("ppp"); },
                          [](NeymanScott const& ns) {
                              return std::string(ns.dispersion.kind == Dispersion::Kind::gaussian
                                                     ? "thomas"
                                                     : "matern_cluster");
                          },
                          [](MixedPoisson const&) { return std::string("mixed_poisson"); },
                          [](Binomial const&) { return std::string("binomial"); },
                      },
                      spec);
}

double mean_intensity(ProcessSpec const& spec, Window const& window)
{
    return std::visit(overloaded{
                          [](Poisson const& p) { return p.intensity; },
                          [](NeymanScott const& ns) {
                              return ns.parent_intensity * ns.mean_daughters;
                          },
                          [](MixedPoisson const& mp) { return mp.intensity; },
                          [&](Binomial const& b) {
                              double const inner = std::min(window.guard_radius, b.radius);
                              double const vol = unit_ball_volume(window.dimension)
                                                 * (std::pow(b.radius, window.dimension)
                                                    - std::pow(inner, window.dimension));
                              return static_cast<double>(b.count) / vol;
                          },
                      },
                      spec);
}

//---------------------------------------------------------------------------//
Point sample_uniform_point(int dimension, double inner, double outer, Xoshiro256& rng)
{
    Point p{};
    double const u = uniform01(rng);
    double sine = 0;
    double cosine = 1;
    sincos_turns(uniform01(rng), sine, cosine);
    if (dimension == 2)
    {
        double const r = std::sqrt(inner * inner + u * (outer * outer - inner * inner));
        p[0] = r * cosine;
        p[1] = r * sine;
        return p;
    }
    double const inner3 = inner * inner * inner;
    double const r = std::cbrt(inner3 + u * (outer * outer * outer - inner3));
    double const z = 1.0 - 2.0 * uniform01(rng);
    double const rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    p[0] = r * rho * cosine;
    p[1] = r * rho * sine;
    p[2] = r * z;
    return p;
}

Point sample_uniform_point(Window const& window, Xoshiro256& rng)
{
    return sample_uniform_point(window.dimension, window.guard_radius, window.radius, rng);
}

PointPattern sample_ppp(double intensity, Window const& window, Xoshiro256& rng)
{
    require(std::isfinite(intensity) && intensity > 0, "sample_ppp: intensity must be positive");
    window.validate();
    PointPattern pattern{{}, window, "ppp"};
    auto const n = sample_poisson_count(intensity * window.volume(), rng);
    pattern.points.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
    {
        pattern.points.push_back(sample_uniform_point(window, rng));
    }
    return pattern;
}

PointPattern sample_neyman_scott(NeymanScott const& spec, Window const& window, Xoshiro256& rng)
{
    validate(ProcessSpec{spec});
    window.validate();
    PointPattern pattern{{}, window, process_label(ProcessSpec{spec})};

    int const d = window.dimension;
    double const extended = window.radius + spec.dispersion.extension_factor() * spec.dispersion.scale;
    double const parent_mean = spec.parent_intensity * unit_ball_volume(d) * std::pow(extended, d);
    auto const parents = sample_poisson_count(parent_mean, rng);

    double const inner2 = window.guard_radius * window.guard_radius;
    double const outer2 = window.radius * window.radius;
    pattern.points.reserve(static_cast<std::size_t>(
        spec.parent_intensity * spec.mean_daughters * window.volume() * 1.2));
    for (std::int64_t i = 0; i < parents; ++i)
    {
        Point const parent = sample_uniform_point(d, 0.0, extended, rng);
        auto const daughters = sample_poisson_count(spec.mean_daughters, rng);
        for (std::int64_t j = 0; j < daughters; ++j)
        {
            Point const offset = displacement(spec.dispersion, d, rng);
            Point const p{parent[0] + offset[0], parent[1] + offset[1], parent[2] + offset[2]};
            double const r2 = norm_squared(p);
            if (r2 >= inner2 && r2 <= outer2)
            {
                pattern.points.push_back(p);
            }
        }
    }
    return pattern;
}

PointPattern sample_mixed_poisson(MixedPoisson const& spec, Window const& window, Xoshiro256& rng)
{
    validate(ProcessSpec{spec});
    window.validate();
    double const x = std::visit(overloaded{
                                    [&](DiscreteMixture const& m) {
                                        double const u = uniform01(rng);
                                        double acc = 0;
                                        for (auto const& [value, weight] : m.atoms)
                                        {
                                            acc += weight;
                                            if (u < acc)
                                            {
                                                return value;
                                            }
                                        }
                                        return m.atoms.back().first;
                                    },
                                    [&](GammaMixture const& g) {
                                        return sample_gamma(g.shape, g.scale, rng);
                                    },
                                },
                                spec.intensity_law);

    PointPattern pattern{{}, window, "mixed_poisson"};
    if (x <= 0)
    {
        return pattern;
    }
    pattern.points = sample_ppp(x, window, rng).points;
    return pattern;
}

PointPattern sample_binomial(std::int64_t count, double radius, Window const& window, Xoshiro256& rng)
{
    window.validate();
    require(count >= 1, "sample_binomial: count must be >= 1");
    require(radius > 0, "sample_binomial: radius must be positive");
    require(radius <= window.radius, "sample_binomial: radius exceeds window radius");
    require(radius > window.guard_radius, "sample_binomial: radius inside guard zone");
    PointPattern pattern{{}, window, "binomial"};
    pattern.points.reserve(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i)
    {
        pattern.points.push_back(
            sample_uniform_point(window.dimension, window.guard_radius, radius, rng));
    }
    return pattern;
}

PointPattern sample(ProcessSpec const& spec, Window const& window, Xoshiro256& rng)
{
    return std::visit(overloaded{
                          [&](Poisson const& p) { return sample_ppp(p.intensity, window, rng); },
                          [&](NeymanScott const& ns) { return sample_neyman_scott(ns, window, rng); },
                          [&](MixedPoisson const& mp) { return sample_mixed_poisson(mp, window, rng); },
                          [&](Binomial const& b) {
                              return sample_binomial(b.count, b.radius, window, rng);
                          },
                      },
                      spec);
}

PointPattern superpose(std::span<PointPattern const> patterns)
{
    if (patterns.empty())
    {
        throw std::invalid_argument("superpose: no patterns given");
    }
    PointPattern result{{}, patterns.front().window, {}};
    std::size_t total = 0;
    for (auto const& p : patterns)
    {
        if (!(p.window == result.window))
        {
            throw std::invalid_argument("superpose: mismatched windows");
        }
        total += p.size();
    }
    result.points.reserve(total);
    for (auto const& p : patterns)
    {
        result.points.insert(result.points.end(), p.points.begin(), p.points.end());
        if (!result.process_label.empty())
        {
            result.process_label += "+";
        }
        result.process_label += p.process_label;
    }
    return result;
}

void write_pattern_csv(std::ostream& os, PointPattern const& pattern, std::uint64_t seed)
{
    int const d = pattern.window.dimension;
    os << "# process_label=" << pattern.process_label << " seed=" << seed << '\n';
    for (int i = 0; i < d; ++i)
    {
        os << (i ? "," : "") << 'x' << (i + 1);
    }
    os << '\n';
    for (auto const& p : pattern.points)
    {
        for (int i = 0; i < d; ++i)
        {
            os << (i ? "," : "") << format_double(p[i]);
        }
        os << '\n';
    }
}

}  // namespace stord
