#include "stord/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stord/numerics.hpp"
#include "stord/parallel.hpp"
#include "stord/stats.hpp"

namespace stord
{
namespace
{
struct Evidence
{
    bool left_smaller = false;
    bool right_smaller = false;
};

Relation decide(Evidence e)
{
    if (e.left_smaller && e.right_smaller)
    {
        return Relation::crossing;
    }
    if (e.left_smaller)
    {
        return Relation::left_smaller;
    }
    if (e.right_smaller)
    {
        return Relation::right_smaller;
    }
    return Relation::indistinguishable;
}

void check_sizes(std::span<double const> x, std::span<double const> y, char const* who)
{
    if (x.size() < min_order_samples || y.size() < min_order_samples)
    {
        throw std::invalid_argument(std::string(who) + ": each sample set needs at least "
                                    + std::to_string(min_order_samples) + " values");
    }
}

void check_confidence(double confidence)
{
    if (!(confidence > 0 && confidence < 1))
    {
        throw std::invalid_argument("confidence must lie in (0, 1)");
    }
}

// Radial integral of surface·r^{d-1}·f(r) over [inner, outer], split at the
// path-loss knee where the integrand changes character.
double radial_integral(std::function<double(double)> const& f, int dimension, double inner, double outer, double knee)
{
    double const surface = dimension * unit_ball_volume(dimension);
    auto const integrand = [&](double r) { return surface * std::pow(r, dimension - 1) * f(r); };
    QuadratureTolerance const tol{1e-12, 1e-10};
    if (knee > inner && knee < outer)
    {
        return integrate(integrand, inner, knee, tol).value + integrate(integrand, knee, outer, tol).value;
    }
    return integrate(integrand, inner, outer, tol).value;
}

double knee_of(PathLoss const& pl)
{
    return std::pow(pl.b, -1.0 / pl.delta);
}

}  // namespace

//---------------------------------------------------------------------------//
std::string_view to_string(Relation r)
{
    switch (r)
    {
        case Relation::left_smaller:
            return "LeftSmaller";
        case Relation::right_smaller:
            return "RightSmaller";
        case Relation::indistinguishable:
            return "Indistinguishable";
        case Relation::crossing:
            return "Crossing";
    }
    return "Indistinguishable";
}

Relation relation_from_string(std::string_view text)
{
    for (auto r : {Relation::left_smaller, Relation::right_smaller, Relation::indistinguishable, Relation::crossing})
    {
        if (to_string(r) == text)
        {
            return r;
        }
    }
    throw std::invalid_argument("unknown relation '" + std::string(text) + "'");
}

std::vector<double> default_s_grid()
{
    return log_space(1e-2, 1e2, 50);
}

std::vector<double> default_x_grid(std::span<double const> x, std::span<double const> y)
{
    std::vector<double> pooled;
    pooled.reserve(x.size() + y.size());
    for (auto span : {x, y})
    {
        for (double v : span)
        {
            if (std::isfinite(v))
            {
                pooled.push_back(v);
            }
        }
    }
    if (pooled.empty())
    {
        return {1.0};
    }
    std::sort(pooled.begin(), pooled.end());
    double const lo = quantile_sorted(pooled, 0.005);
    double const hi = quantile_sorted(pooled, 0.995);
    if (lo > 0 && hi > lo)
    {
        return log_space(lo, hi, 60);
    }
    if (hi > lo)
    {
        std::vector<double> grid(60);
        for (int i = 0; i < 60; ++i)
        {
            grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / 59.0;
        }
        return grid;
    }
    return {lo};
}

OrderVerdict check_st_order(std::span<double const> x, std::span<double const> y, std::span<double const> x_grid, double confidence)
{
    check_sizes(x, y, "check_st_order");
    check_confidence(confidence);
    std::vector<double> sx(x.begin(), x.end());
    std::vector<double> sy(y.begin(), y.end());
    std::sort(sx.begin(), sx.end());
    std::sort(sy.begin(), sy.end());

    OrderVerdict v;
    v.order = "st";
    v.confidence = confidence;
    v.grid = x_grid.empty() ? default_x_grid(x, y) : std::vector<double>(x_grid.begin(), x_grid.end());

    // Split the error budget between the two empirical distributions.
    double const per_sample = 1.0 - 0.5 * (1.0 - confidence);
    double const eps_x = dkw_epsilon(sx.size(), per_sample);
    double const eps_y = dkw_epsilon(sy.size(), per_sample);
    double const band = eps_x + eps_y;
    v.left_curve.n_replicates = static_cast<std::int64_t>(sx.size());
    v.right_curve.n_replicates = static_cast<std::int64_t>(sy.size());

    Evidence e;
    for (double point : v.grid)
    {
        double const fx = ccdf_sorted(sx, point);
        double const fy = ccdf_sorted(sy, point);
        v.left_curve.abscissae.push_back(point);
        v.left_curve.values.push_back(fx);
        v.left_curve.half_widths.push_back(eps_x);
        v.right_curve.abscissae.push_back(point);
        v.right_curve.values.push_back(fy);
        v.right_curve.half_widths.push_back(eps_y);
        double const gap = fx - fy;
        v.margins.push_back(gap);
        v.lower.push_back(gap - band);
        v.upper.push_back(gap + band);
        e.left_smaller |= gap + band < 0;
        e.right_smaller |= gap - band > 0;
    }
    v.relation = decide(e);
    return v;
}

OrderVerdict check_lt_order(std::span<double const> x,
                            std::span<double const> y,
                            std::span<double const> s_grid,
                            LtOrderOptions const& options)
{
    check_sizes(x, y, "check_lt_order");
    check_confidence(options.confidence);
    if (options.n_bootstrap < 200)
    {
        throw std::invalid_argument("check_lt_order: n_bootstrap must be >= 200");
    }
    if (options.paired && x.size() != y.size())
    {
        throw std::invalid_argument("check_lt_order: paired comparison needs equal sample sizes");
    }

    OrderVerdict v;
    v.order = "lt";
    v.confidence = options.confidence;
    v.seed = options.seed;
    v.grid = s_grid.empty() ? default_s_grid() : std::vector<double>(s_grid.begin(), s_grid.end());

    std::uint64_t const seed_x = derive_seed(options.seed, 1);
    std::uint64_t const seed_y = options.paired ? seed_x : derive_seed(options.seed, 2);
    auto const bx = bootstrap_laplace(x, v.grid, options.n_bootstrap, seed_x, options.threads);
    auto const by = bootstrap_laplace(y, v.grid, options.n_bootstrap, seed_y, options.threads);

    double const tail = 0.5 * (1.0 - options.confidence) / static_cast<double>(v.grid.size());
    v.left_curve.n_replicates = static_cast<std::int64_t>(x.size());
    v.right_curve.n_replicates = static_cast<std::int64_t>(y.size());
    Evidence e;
    std::vector<double> gaps(static_cast<std::size_t>(options.n_bootstrap));
    for (std::size_t j = 0; j < v.grid.size(); ++j)
    {
        for (int b = 0; b < options.n_bootstrap; ++b)
        {
            gaps[static_cast<std::size_t>(b)] = bx.replicate(b, j) - by.replicate(b, j);
        }
        std::sort(gaps.begin(), gaps.end());
        double const gap = bx.estimate[j] - by.estimate[j];
        double const lo = quantile_sorted(gaps, tail);
        double const hi = quantile_sorted(gaps, 1.0 - tail);
        v.margins.push_back(gap);
        v.lower.push_back(lo);
        v.upper.push_back(hi);
        for (auto [curve, boot] : {std::pair{&v.left_curve, &bx}, std::pair{&v.right_curve, &by}})
        {
            curve->abscissae.push_back(v.grid[j]);
            curve->values.push_back(boot->estimate[j]);
            curve->half_widths.push_back(0.5 * (boot->percentile(j, 1.0 - tail) - boot->percentile(j, tail)));
        }
        // Smaller in LT order means the larger transform.
        e.left_smaller |= lo > 0;
        e.right_smaller |= hi < 0;
    }
    v.relation = decide(e);
    return v;
}

//---------------------------------------------------------------------------//
LfProbe LfProbe::default_probe(int dimension)
{
    LfProbe probe;
    probe.functions.push_back({"gain_delta4", make_pathloss(1, 1.0, 4.0, dimension), std::nullopt});
    probe.functions.push_back({"gain_delta6", make_pathloss(1, 1.0, 6.0, dimension), std::nullopt});
    probe.functions.push_back({"rayleigh_gain_delta4", make_pathloss(1, 1.0, 4.0, dimension), FadingModel::rayleigh()});
    probe.s_grid = default_s_grid();
    return probe;
}

Relation aggregate_relations(std::span<Relation const> relations)
{
    bool any_left = false;
    bool any_right = false;
    bool all_left = !relations.empty();
    bool all_right = !relations.empty();
    for (auto r : relations)
    {
        if (r == Relation::crossing)
        {
            return Relation::crossing;
        }
        any_left |= r == Relation::left_smaller;
        any_right |= r == Relation::right_smaller;
        all_left &= r == Relation::left_smaller;
        all_right &= r == Relation::right_smaller;
    }
    if (any_left && any_right)
    {
        return Relation::crossing;
    }
    if (all_left)
    {
        return Relation::left_smaller;
    }
    if (all_right)
    {
        return Relation::right_smaller;
    }
    return Relation::indistinguishable;
}

std::vector<std::vector<double>> simulate_probe_sums(ProcessSpec const& spec,
                                                     LfProbe const& probe,
                                                     Window const& window,
                                                     std::int64_t n,
                                                     std::uint64_t seed,
                                                     int threads)
{
    if (n < 1)
    {
        throw std::invalid_argument("simulate_probe_sums: replicate count must be >= 1");
    }
    if (probe.functions.empty())
    {
        throw std::invalid_argument("simulate_probe_sums: probe has no test functions");
    }
    validate(spec);
    window.validate();
    std::vector<PathLoss> gains;
    for (auto const& f : probe.functions)
    {
        PathLoss pl = f.pathloss;
        pl.validate();
        if (pl.dimension != window.dimension)
        {
            throw std::invalid_argument("probe function '" + f.name + "' has the wrong dimension");
        }
        pl.prepare();
        gains.push_back(pl);
    }

    std::vector<std::vector<double>> sums(probe.functions.size(), std::vector<double>(static_cast<std::size_t>(n)));
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t i) {
        auto pattern_rng = make_stream(seed, i, StreamPurpose::pattern);
        auto mark_rng = make_stream(seed, i, StreamPurpose::interferer_fading);
        auto const pattern = sample(spec, window, pattern_rng);
        for (std::size_t k = 0; k < gains.size(); ++k)
        {
            auto const& marks = probe.functions[k].marks;
            double total = 0;
            for (auto const& p : pattern.points)
            {
                double const g = gains[k].gain_from_squared(norm_squared(p));
                total += marks ? marks->sample(mark_rng) * g : g;
            }
            sums[k][i] = total;
        }
    });
    return sums;
}

double lf_exponent(double intensity, ProbeFunction const& f, double s, int dimension, double inner, double outer)
{
    PathLoss const& pl = f.pathloss;
    auto const one_minus = [&](double r) {
        double const g = 1.0 / (pl.a + pl.b * std::pow(r, pl.delta));
        if (!std::isfinite(g))
        {
            return 1.0;
        }
        double const t = s * g;
        return f.marks ? 1.0 - f.marks->laplace(t) : -std::expm1(-t);
    };
    return intensity * radial_integral(one_minus, dimension, inner, outer, knee_of(pl));
}

LfVerdict check_lf_order(ProcessSpec const& left,
                         ProcessSpec const& right,
                         LfProbe const& probe,
                         Window const& window,
                         std::int64_t n,
                         std::uint64_t seed,
                         LfOrderOptions const& options)
{
    auto const s1 = simulate_probe_sums(left, probe, window, n, derive_seed(seed, 11), options.threads);
    auto const s2 = simulate_probe_sums(right, probe, window, n, derive_seed(seed, 12), options.threads);

    LfVerdict result;
    std::vector<Relation> relations;
    for (std::size_t k = 0; k < probe.functions.size(); ++k)
    {
        LtOrderOptions lt;
        lt.confidence = options.confidence;
        lt.n_bootstrap = options.n_bootstrap;
        lt.seed = derive_seed(seed, 100 + k);
        lt.threads = options.threads;
        auto verdict = check_lt_order(s1[k], s2[k], probe.s_grid, lt);
        verdict.order = "lf";
        verdict.probe_limited = true;
        relations.push_back(verdict.relation);
        result.function_names.push_back(probe.functions[k].name);
        result.per_function.push_back(std::move(verdict));
    }

    result.aggregate.order = "lf";
    result.aggregate.relation = aggregate_relations(relations);
    result.aggregate.confidence = options.confidence;
    result.aggregate.seed = seed;
    result.aggregate.probe_limited = true;
    result.aggregate.grid = probe.s_grid.empty() ? default_s_grid() : probe.s_grid;
    // Aggregate margin: the smallest evidence across functions at each s.
    for (std::size_t j = 0; j < result.aggregate.grid.size(); ++j)
    {
        double margin = result.per_function.front().margins[j];
        double lower = result.per_function.front().lower[j];
        double upper = result.per_function.front().upper[j];
        for (auto const& pf : result.per_function)
        {
            margin = std::min(margin, pf.margins[j]);
            lower = std::min(lower, pf.lower[j]);
            upper = std::max(upper, pf.upper[j]);
        }
        result.aggregate.margins.push_back(margin);
        result.aggregate.lower.push_back(lower);
        result.aggregate.upper.push_back(upper);
    }

    for (ProcessSpec const* spec : {&left, &right})
    {
        if (auto const* b = std::get_if<Binomial>(spec))
        {
            double const lambda = mean_intensity(*spec, window);
            double worst = 0;
            for (auto const& f : probe.functions)
            {
                for (double s : result.aggregate.grid)
                {
                    worst = std::max(worst, lf_exponent(lambda, f, s, window.dimension, window.guard_radius, b->radius));
                }
            }
            result.binomial_condition = worst;
            result.binomial_count = b->count;
        }
    }
    return result;
}

//---------------------------------------------------------------------------//
std::function<double(double)> ppp_singular_lt(double intensity, double delta, int dimension, double frac_moment)
{
    double const alpha = static_cast<double>(dimension) / delta;
    if (!(alpha > 0 && alpha < 1))
    {
        throw std::domain_error("ppp_singular_lt: d/δ must lie in (0, 1)");
    }
    if (!(intensity >= 0) || !(frac_moment >= 0))
    {
        throw std::invalid_argument("ppp_singular_lt: intensity and fractional moment must be >= 0");
    }
    double const coeff = intensity * unit_ball_volume(dimension) * frac_moment * gamma_fn(1.0 - alpha);
    return [coeff, alpha](double s) {
        if (!(s >= 0))
        {
            throw std::domain_error("ppp_singular_lt: s must be >= 0");
        }
        return std::exp(-coeff * std::pow(s, alpha));
    };
}

double ppp_laplace_functional(double intensity,
                              std::function<double(double)> const& u,
                              Window const& window,
                              std::span<double const> breakpoints)
{
    window.validate();
    if (!(intensity >= 0))
    {
        throw std::invalid_argument("ppp_laplace_functional: intensity must be >= 0");
    }
    std::vector<double> cuts{window.guard_radius};
    for (double b : breakpoints)
    {
        if (b > window.guard_radius && b < window.radius)
        {
            cuts.push_back(b);
        }
    }
    cuts.push_back(window.radius);
    std::sort(cuts.begin(), cuts.end());

    auto const one_minus = [&](double r) {
        double const value = u(r);
        if (std::isnan(value) || value < 0)
        {
            throw std::domain_error("ppp_laplace_functional: u must be nonnegative");
        }
        return -std::expm1(-value);
    };
    double exponent = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    {
        exponent += radial_integral(one_minus, window.dimension, cuts[i], cuts[i + 1], -1.0);
    }
    return std::exp(-intensity * exponent);
}

double ppp_interference_laplace(double intensity, FadingModel const& fading, PathLoss const& pl, Window const& window, double s)
{
    window.validate();
    ProbeFunction const f{"interference", pl, fading};
    return std::exp(-lf_exponent(intensity, f, s, window.dimension, window.guard_radius, window.radius));
}

}  // namespace stord
