#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stord/numerics.hpp"
#include "stord/ordering.hpp"

using namespace stord;

namespace
{
std::vector<double> exponential(std::size_t n, std::uint64_t seed, double mean = 1.0)
{
    auto rng = make_stream(seed, 0);
    std::vector<double> x(n);
    for (auto& v : x)
    {
        v = -mean * std::log(uniform_open01(rng));
    }
    return x;
}

std::vector<double> powers(FadingModel const& model, std::size_t n, std::uint64_t seed)
{
    auto rng = make_stream(seed, 0, StreamPurpose::interferer_fading);
    std::vector<double> x(n);
    for (auto& v : x)
    {
        v = model.sample(rng);
    }
    return x;
}

LtOrderOptions lt_options(std::uint64_t seed, int n_bootstrap = 300)
{
    LtOrderOptions o;
    o.seed = seed;
    o.n_bootstrap = n_bootstrap;
    return o;
}

//! Interference of a superposition of independent patterns under a Rayleigh/δ=4 channel.
std::vector<double> superposed_interference(std::vector<ProcessSpec> const& parts, Window const& w, int n,
                                            std::uint64_t seed)
{
    auto const pl = make_pathloss(1, 1, 4, 2);
    auto const fading = FadingModel::rayleigh();
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
    {
        auto rng = make_stream(seed, static_cast<std::uint64_t>(i));
        auto fade = make_stream(seed, static_cast<std::uint64_t>(i), StreamPurpose::interferer_fading);
        auto redraw = make_stream(seed, static_cast<std::uint64_t>(i), StreamPurpose::redraw);
        std::vector<PointPattern> patterns;
        for (auto const& p : parts)
        {
            patterns.push_back(sample(p, w, rng));
        }
        out[static_cast<std::size_t>(i)] = interference_of(superpose(patterns), fading, pl, fade, redraw);
    }
    return out;
}

}  // namespace

TEST_CASE("relation names round-trip")
{
    for (auto r : {Relation::left_smaller, Relation::right_smaller, Relation::indistinguishable, Relation::crossing})
    {
        CHECK(relation_from_string(to_string(r)) == r);
    }
    CHECK_THROWS(relation_from_string("smaller"));
}

TEST_CASE("usual order: shifted copies")
{
    auto const x = exponential(20000, 1);
    auto y = x;
    for (auto& v : y)
    {
        v += 1.0;
    }
    auto const v = check_st_order(x, y);
    CHECK(v.relation == Relation::left_smaller);
    CHECK(check_st_order(y, x).relation == Relation::right_smaller);
    CHECK(v.order == "st");
    CHECK(v.grid.size() == 60);
    CHECK(v.left_curve.values.size() == v.grid.size());
}

TEST_CASE("identical samples are indistinguishable")
{
    auto const x = exponential(5000, 2);
    CHECK(check_st_order(x, x).relation == Relation::indistinguishable);
    CHECK(check_lt_order(x, x, {}, lt_options(3)).relation == Relation::indistinguishable);
}

TEST_CASE("Exp(1) vs Gamma(2, 1/2) cross in the usual order")
{
    // analytic CCDFs e^{-x} and (1+2x)e^{-2x} change order at e^x = 1 + 2x
    auto const diff = [](double t) { return std::exp(-t) - (1 + 2 * t) * std::exp(-2 * t); };
    CHECK(diff(0.5) < 0);
    CHECK(diff(3.0) > 0);
    auto const x = powers(FadingModel::rayleigh(), 100000, 4);
    auto const y = powers(FadingModel::nakagami(2), 100000, 5);
    CHECK(check_st_order(x, y).relation == Relation::crossing);
}

TEST_CASE("Laplace order: Exp(1) is smaller than a point mass at its mean")
{
    auto const x = exponential(20000, 6);
    std::vector<double> const y(20000, 1.0);
    auto const v = check_lt_order(x, y, {}, lt_options(7));
    CHECK(v.relation == Relation::left_smaller);
    CHECK(v.order == "lt");
    for (std::size_t k = 0; k < v.grid.size(); ++k)
    {
        CHECK(v.lower[k] <= v.margins[k]);
        CHECK(v.margins[k] <= v.upper[k]);
    }
}

TEST_CASE("order checks reject tiny samples and bad confidence")
{
    auto const x = exponential(500, 8);
    auto const y = exponential(5000, 9);
    CHECK_THROWS_AS(check_st_order(x, y), std::invalid_argument);
    CHECK_THROWS_AS(check_lt_order(x, y), std::invalid_argument);
    CHECK_THROWS_AS(check_st_order(y, y, {}, 1.5), std::invalid_argument);
    LtOrderOptions paired = lt_options(1);
    paired.paired = true;
    auto const z = exponential(6000, 10);
    CHECK_THROWS_AS(check_lt_order(y, z, {}, paired), std::invalid_argument);
}

TEST_CASE("verdicts are reproducible and thread-count independent")
{
    auto const x = exponential(5000, 11);
    auto const y = exponential(5000, 12, 1.1);
    auto a = lt_options(13);
    a.threads = 1;
    auto b = a;
    b.threads = 3;
    auto const va = check_lt_order(x, y, {}, a);
    auto const vb = check_lt_order(x, y, {}, b);
    CHECK(va.lower == vb.lower);
    CHECK(va.upper == vb.upper);
}

TEST_CASE("st ordering implies Laplace ordering in the same direction")
{
    // Y = c·X + t with c ≥ 1, t ≥ 0 dominates X pathwise.
    int index = 0;
    for (auto [c, t] : {std::pair{1.0, 0.5}, std::pair{1.5, 0.0}, std::pair{1.2, 0.2}, std::pair{2.0, 0.1}})
    {
        CAPTURE(c);
        CAPTURE(t);
        auto const x = exponential(10000, 20 + index);
        auto const u = exponential(10000, 40 + index);
        std::vector<double> y(x.size());
        for (std::size_t k = 0; k < x.size(); ++k)
        {
            y[k] = c * u[k] + t;
        }
        auto const st = check_st_order(x, y);
        auto const lt = check_lt_order(x, y, {}, lt_options(60 + index));
        CHECK(st.relation == Relation::left_smaller);
        CHECK(lt.relation != Relation::right_smaller);
        CHECK(lt.relation != Relation::crossing);
        CHECK(lt.relation == Relation::left_smaller);
        ++index;
    }
}

TEST_CASE("Nakagami fading orders interference powers in the Laplace order")
{
    // L_m(s) = (1+s/m)^{-m} decreases in m, so m=1 power ≤_Lt m=2 power
    auto const x = powers(FadingModel::nakagami(1), 20000, 70);
    auto const y = powers(FadingModel::nakagami(2), 20000, 71);
    CHECK(check_lt_order(x, y, {}, lt_options(72)).relation == Relation::left_smaller);
}

TEST_CASE("aggregating per-function relations")
{
    using R = Relation;
    auto agg = [](std::vector<R> v) { return aggregate_relations(v); };
    CHECK(agg({R::left_smaller, R::left_smaller}) == R::left_smaller);
    CHECK(agg({R::right_smaller}) == R::right_smaller);
    CHECK(agg({R::left_smaller, R::right_smaller}) == R::crossing);
    CHECK(agg({R::left_smaller, R::indistinguishable}) == R::indistinguishable);
    CHECK(agg({R::crossing, R::indistinguishable}) == R::crossing);
    CHECK(agg({}) == R::indistinguishable);
}

TEST_CASE("analytic transforms")
{
    auto const lt = ppp_singular_lt(1.0, 4.0, 2, std::sqrt(M_PI) / 2);
    CHECK(lt(0.0) == 1.0);
    CHECK(lt(1.0) == doctest::Approx(std::exp(-M_PI * M_PI / 2)).epsilon(1e-13));
    CHECK(lt(1.0) == doctest::Approx(7.1918833558263656e-3).epsilon(1e-13));
    auto const empty = ppp_singular_lt(0.0, 4.0, 2, 1.0);
    CHECK(empty(5.0) == 1.0);

    Window w;
    w.radius = 40;
    CHECK(ppp_laplace_functional(1.0, [](double) { return 0.0; }, w) == 1.0);
    auto const indicator = [](double r) { return r <= 1.0 ? 1.0 : 0.0; };
    double const breaks[] = {1.0};
    double const expected = std::exp(-M_PI * (1 - std::exp(-1.0)));
    CHECK(ppp_laplace_functional(1.0, indicator, w, breaks) == doctest::Approx(expected).epsilon(1e-10));
    CHECK(expected == doctest::Approx(0.13726178956674906).epsilon(1e-14));

    // finite-window interference transform of a singular model approaches the R^d formula
    auto const pl = make_pathloss(0, 1, 4, 2);
    w.radius = 200;
    w.guard_radius = 0;
    CHECK(ppp_interference_laplace(1.0, FadingModel::rayleigh(), pl, w, 1.0) == doctest::Approx(lt(1.0)).epsilon(1e-3));
}

TEST_CASE("Laplace functional vs Monte Carlo void-type estimate")
{
    // P(no point in B_0(1)) weighted: E[e^{-Σ 1{‖x‖≤1}}] for PPP(1)
    Window w;
    w.radius = 3;
    int const n = 40000;
    double sum = 0;
    double sum2 = 0;
    for (int i = 0; i < n; ++i)
    {
        auto rng = make_stream(80, static_cast<std::uint64_t>(i));
        auto const p = sample_ppp(1.0, w, rng);
        int inside = 0;
        for (auto const& x : p.points)
        {
            inside += norm(x) <= 1.0;
        }
        double const v = std::exp(-static_cast<double>(inside));
        sum += v;
        sum2 += v * v;
    }
    double const mean = sum / n;
    double const se = std::sqrt((sum2 / n - mean * mean) / n);
    CHECK(std::abs(mean - std::exp(-M_PI * (1 - std::exp(-1.0)))) < 4 * se);
}

TEST_CASE("Laplace functional of the gain over a PPP vs Monte Carlo")
{
    Window w;
    w.radius = 40;
    auto const pl = make_pathloss(1, 1, 4, 2);
    double const reference = ppp_laplace_functional(1.0, [&](double r) { return pl.gain(r); }, w);
    auto const sums = simulate_probe_sums(Poisson{1.0}, LfProbe{{{"gain", pl, std::nullopt}}, {1.0}}, w, 20000, 81, 1);
    std::vector<double> e(sums[0].size());
    for (std::size_t k = 0; k < e.size(); ++k)
    {
        e[k] = std::exp(-sums[0][k]);
    }
    auto const m = mean_and_standard_error(e);
    CHECK(std::abs(m.mean - reference) < 3.5 * m.standard_error);
}

TEST_CASE("Laplace functional order of point processes")
{
    Window w;
    w.radius = 20;
    auto probe = LfProbe::default_probe(2);
    probe.s_grid = log_space(0.05, 20, 12);
    LfOrderOptions opts;
    opts.n_bootstrap = 250;

    SUBCASE("PPP vs itself")
    {
        auto const v = check_lf_order(Poisson{0.2}, Poisson{0.2}, probe, w, 3000, 90, opts);
        CHECK(v.aggregate.relation == Relation::indistinguishable);
        CHECK(v.per_function.size() == 3);
        CHECK_FALSE(v.binomial_condition.has_value());
    }
    SUBCASE("clustered process is smaller than Poisson")
    {
        NeymanScott thomas;
        thomas.parent_intensity = 0.02;
        thomas.mean_daughters = 10;
        thomas.dispersion.scale = 1.0;
        auto const v = check_lf_order(thomas, Poisson{0.2}, probe, w, 5000, 91, opts);
        CHECK(v.aggregate.relation == Relation::left_smaller);
    }
    SUBCASE("mixed Poisson is smaller than Poisson")
    {
        MixedPoisson mixed;
        mixed.intensity_law = DiscreteMixture{{{0.05, 0.5}, {0.35, 0.5}}};
        mixed.intensity = 0.2;
        auto const v = check_lf_order(mixed, Poisson{0.2}, probe, w, 5000, 92, opts);
        CHECK(v.aggregate.relation == Relation::left_smaller);
    }
    SUBCASE("Poisson is smaller than binomial on a small disk")
    {
        Window small;
        small.radius = 2;
        int const count = 3;
        double const lambda = count / (M_PI * 4);
        auto const v = check_lf_order(Poisson{lambda}, Binomial{count, 2}, probe, small, 40000, 93, opts);
        CHECK(v.aggregate.relation == Relation::left_smaller);
        REQUIRE(v.binomial_condition.has_value());
        CHECK(*v.binomial_count == count);
        CHECK(*v.binomial_condition <= count);
        CHECK(*v.binomial_condition > 0);
    }
}

TEST_CASE("binomial condition bounded by the count")
{
    ProbeFunction const f{"u", make_pathloss(1, 1, 4, 2), FadingModel::rayleigh()};
    double const lambda = 100 / (M_PI * 100);
    for (double s : {0.01, 1.0, 100.0, 1e6})
    {
        double const value = lf_exponent(lambda, f, s, 2, 0.0, 10.0);
        CHECK(value >= 0);
        CHECK(value <= 100.0 + 1e-9);
    }
    // unmarked probe at huge s: integrand → 1 on the whole disk
    ProbeFunction const plain{"g", make_pathloss(1, 1, 4, 2), std::nullopt};
    CHECK(lf_exponent(lambda, plain, 1e12, 2, 0.0, 10.0) == doctest::Approx(100.0).epsilon(1e-6));
}

TEST_CASE("superposition preserves the Laplace functional order")
{
    // PCP₁ ∪ PCP₂ ≤_Lf PPP₁ ∪ PPP₂ at matched intensities, seen through interference
    Window w;
    w.radius = 20;
    NeymanScott a;
    a.parent_intensity = 0.02;
    a.mean_daughters = 10;
    a.dispersion.scale = 1.0;
    NeymanScott b = a;
    b.parent_intensity = 0.01;
    auto const left = superposed_interference({a, b}, w, 8000, 100);
    auto const right = superposed_interference({Poisson{0.2}, Poisson{0.1}}, w, 8000, 101);
    CHECK(check_lt_order(left, right, {}, lt_options(102)).relation == Relation::left_smaller);
}
