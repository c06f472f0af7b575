#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "stord/pointprocess.hpp"

using namespace stord;

namespace
{
struct CountStats
{
    double mean = 0;
    double variance = 0;
};

template<class Draw>
CountStats count_stats(int reps, std::uint64_t seed, Draw&& draw)
{
    double sum = 0;
    double sum2 = 0;
    for (int i = 0; i < reps; ++i)
    {
        auto rng = make_stream(seed, static_cast<std::uint64_t>(i));
        double const n = static_cast<double>(draw(rng).size());
        sum += n;
        sum2 += n * n;
    }
    double const mean = sum / reps;
    return {mean, (sum2 - reps * mean * mean) / (reps - 1)};
}

Window disk(int d, double r, double guard = 0.0)
{
    Window w;
    w.dimension = d;
    w.radius = r;
    w.guard_radius = guard;
    return w;
}

}  // namespace

TEST_CASE("window validation and volume")
{
    CHECK(disk(2, 10).volume() == doctest::Approx(100 * M_PI));
    CHECK(disk(3, 2, 1).volume() == doctest::Approx(4.0 / 3.0 * M_PI * 7));
    CHECK_THROWS_AS(disk(2, 10, 10).validate(), std::invalid_argument);
    CHECK_THROWS_AS(disk(4, 10).validate(), std::invalid_argument);
    CHECK_THROWS_AS(disk(2, 10, -1).validate(), std::invalid_argument);
}

TEST_CASE("uniform points land in the annulus with the right radial law")
{
    auto rng = make_stream(1, 0);
    auto const w = disk(2, 10, 2);
    double sum = 0;
    int const n = 100000;
    for (int i = 0; i < n; ++i)
    {
        auto const p = sample_uniform_point(w, rng);
        double const r = norm(p);
        REQUIRE(r >= 2.0 - 1e-12);
        REQUIRE(r <= 10.0 + 1e-12);
        REQUIRE(p[2] == 0.0);
        sum += r;
    }
    // E‖x‖ on the annulus: (2/3)(R³ − ρ³)/(R² − ρ²)
    double const expected = 2.0 / 3.0 * (1000.0 - 8.0) / (100.0 - 4.0);
    CHECK(sum / n == doctest::Approx(expected).epsilon(0.005));
}

TEST_CASE("PPP count mean equals intensity times area")
{
    auto const w = disk(2, 10);
    auto const s = count_stats(10000, 2, [&](Xoshiro256& rng) { return sample_ppp(1.0, w, rng); });
    CHECK(s.mean == doctest::Approx(100 * M_PI).epsilon(0.01));
}

TEST_CASE("PPP counts are equidispersed in 3D")
{
    auto const w = disk(3, 5);
    auto const s = count_stats(10000, 3, [&](Xoshiro256& rng) { return sample_ppp(2.0, w, rng); });
    CHECK(s.mean == doctest::Approx(2.0 * 4.0 / 3.0 * M_PI * 125).epsilon(0.01));
    CHECK(s.variance / s.mean == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("degenerate windows are rejected")
{
    auto rng = make_stream(1, 0);
    CHECK_THROWS(sample_ppp(1.0, disk(2, 10, 10), rng));
    CHECK_THROWS(sample_ppp(-1.0, disk(2, 10), rng));
}

TEST_CASE("Thomas process intensity is parent intensity times mean daughters")
{
    NeymanScott spec;
    spec.parent_intensity = 0.05;
    spec.mean_daughters = 20;
    spec.dispersion = {Dispersion::Kind::gaussian, 1.0};
    auto const w = disk(2, 20);
    auto const s = count_stats(1000, 4, [&](Xoshiro256& rng) { return sample_neyman_scott(spec, w, rng); });
    CHECK(s.mean / w.volume() == doctest::Approx(1.0).epsilon(0.02));
    // clustering inflates count variance
    CHECK(s.variance > 2 * s.mean);
}

TEST_CASE("Matern cluster intensity")
{
    NeymanScott spec;
    spec.parent_intensity = 0.1;
    spec.mean_daughters = 5;
    spec.dispersion = {Dispersion::Kind::uniform_disk, 2.0};
    auto const w = disk(2, 15);
    auto const s = count_stats(2000, 5, [&](Xoshiro256& rng) { return sample_neyman_scott(spec, w, rng); });
    double const sigma = std::sqrt(s.variance / 2000);
    CHECK(std::abs(s.mean - 0.5 * w.volume()) < 3.5 * sigma);
}

TEST_CASE("almost no daughters gives an empty pattern")
{
    NeymanScott spec;
    spec.parent_intensity = 0.05;
    spec.mean_daughters = 1e-9;
    auto const s = count_stats(200, 6, [&](Xoshiro256& rng) { return sample_neyman_scott(spec, disk(2, 20), rng); });
    CHECK(s.mean == 0.0);
}

TEST_CASE("two-point mixed Poisson: mean count and overdispersion")
{
    MixedPoisson spec;
    spec.intensity_law = DiscreteMixture{{{0.5, 0.5}, {1.5, 0.5}}};
    spec.intensity = 1.0;
    auto const w = disk(2, 10);
    auto const s = count_stats(10000, 7, [&](Xoshiro256& rng) { return sample_mixed_poisson(spec, w, rng); });
    double const area = w.volume();
    CHECK(s.mean == doctest::Approx(area).epsilon(0.01));
    // law of total variance: λ̄|B| + Var(Λ)|B|²
    double const expected_variance = area + 0.25 * area * area;
    CHECK(s.variance > area);
    CHECK(s.variance == doctest::Approx(expected_variance).epsilon(0.06));
}

TEST_CASE("gamma-mixed Poisson mean count")
{
    MixedPoisson spec;
    spec.intensity_law = GammaMixture{2.0, 0.5};
    spec.intensity = 1.0;
    auto const w = disk(2, 10);
    auto const s = count_stats(10000, 8, [&](Xoshiro256& rng) { return sample_mixed_poisson(spec, w, rng); });
    CHECK(s.mean == doctest::Approx(w.volume()).epsilon(0.01));
}

TEST_CASE("degenerate mixture behaves like a PPP")
{
    MixedPoisson spec;
    spec.intensity_law = DiscreteMixture{{{0.3, 1.0}}};
    spec.intensity = 0.3;
    auto const w = disk(2, 10);
    auto const a = count_stats(5000, 9, [&](Xoshiro256& rng) { return sample_mixed_poisson(spec, w, rng); });
    auto const b = count_stats(5000, 10, [&](Xoshiro256& rng) { return sample_ppp(0.3, w, rng); });
    double const se = std::sqrt(a.variance / 5000 + b.variance / 5000);
    CHECK(std::abs(a.mean - b.mean) < 3.5 * se);
    CHECK(a.variance / a.mean == doctest::Approx(1.0).epsilon(0.06));
}

TEST_CASE("declared mixture intensity must match the law mean")
{
    MixedPoisson spec;
    spec.intensity_law = DiscreteMixture{{{0.1, 0.5}, {0.3, 0.5}}};
    spec.intensity = 0.25;
    CHECK_THROWS_AS(validate(ProcessSpec{spec}), std::invalid_argument);
    spec.intensity = 0.2;
    CHECK_NOTHROW(validate(ProcessSpec{spec}));
    CHECK(law_mean(spec) == doctest::Approx(0.2));
}

TEST_CASE("binomial process has a fixed count and uniform radii")
{
    auto const w = disk(2, 10);
    double sum = 0;
    std::int64_t points = 0;
    for (int i = 0; i < 1000; ++i)
    {
        auto rng = make_stream(11, static_cast<std::uint64_t>(i));
        auto const p = sample_binomial(100, 10, w, rng);
        REQUIRE(p.size() == 100);
        for (auto const& x : p.points)
        {
            sum += norm(x);
        }
        points += static_cast<std::int64_t>(p.size());
    }
    CHECK(sum / static_cast<double>(points) == doctest::Approx(20.0 / 3.0).epsilon(0.01));

    auto rng = make_stream(12, 0);
    for (int i = 0; i < 1000; ++i)
    {
        auto const p = sample_binomial(1, 5, disk(2, 5), rng);
        REQUIRE(p.size() == 1);
        REQUIRE(norm(p.points[0]) <= 5.0);
    }
}

TEST_CASE("superposition")
{
    auto const w = disk(2, 10);
    auto const s = count_stats(10000, 13, [&](Xoshiro256& rng) {
        PointPattern const parts[] = {sample_ppp(0.3, w, rng), sample_ppp(0.7, w, rng)};
        return superpose(parts);
    });
    CHECK(s.mean == doctest::Approx(w.volume()).epsilon(0.01));

    PointPattern a;
    a.window = w;
    a.points.assign(10, Point{1, 0, 0});
    PointPattern empty;
    empty.window = w;
    PointPattern const with_empty[] = {a, empty};
    CHECK(superpose(with_empty).points == a.points);

    PointPattern b = a;
    b.points.assign(20, Point{0, 1, 0});
    PointPattern c = a;
    c.points.assign(30, Point{0, 0, 0});
    PointPattern const three[] = {a, b, c};
    CHECK(superpose(three).size() == 60);

    PointPattern other = a;
    other.window = disk(2, 5);
    PointPattern const mismatched[] = {a, other};
    CHECK_THROWS(superpose(mismatched));
}

TEST_CASE("intensity consistency across all processes")
{
    auto const w = disk(2, 12);
    NeymanScott thomas;
    thomas.parent_intensity = 0.1;
    thomas.mean_daughters = 3;
    thomas.dispersion = {Dispersion::Kind::gaussian, 1.5};
    MixedPoisson mixed;
    mixed.intensity_law = DiscreteMixture{{{0.1, 0.5}, {0.5, 0.5}}};
    mixed.intensity = 0.3;
    Binomial bpp{int(0.3 * w.volume()), 12};
    ProcessSpec const specs[] = {Poisson{0.3}, thomas, mixed, bpp};
    for (auto const& spec : specs)
    {
        CAPTURE(process_label(spec));
        int const reps = 2000;
        auto const s = count_stats(reps, 14, [&](Xoshiro256& rng) { return sample(spec, w, rng); });
        double const declared = mean_intensity(spec, w);
        double const sigma = std::sqrt(s.variance / reps) / w.volume();
        CHECK(std::abs(s.mean / w.volume() - declared) <= 3.5 * std::max(sigma, 1e-3));
    }
}

TEST_CASE("patterns are bit-identical for a fixed seed")
{
    NeymanScott thomas;
    thomas.parent_intensity = 0.1;
    thomas.mean_daughters = 3;
    auto rng1 = make_stream(99, 5);
    auto rng2 = make_stream(99, 5);
    auto const w = disk(2, 20);
    CHECK(sample(thomas, w, rng1).points == sample(thomas, w, rng2).points);
}

TEST_CASE("pattern CSV dump")
{
    PointPattern p;
    p.window = disk(2, 10);
    p.process_label = "ppp";
    p.points = {Point{0.5, -1.25, 0}};
    std::ostringstream os;
    write_pattern_csv(os, p, 42);
    auto const text = os.str();
    CHECK(text.find("ppp") != std::string::npos);
    CHECK(text.find("42") != std::string::npos);
    CHECK(text.find("x1,x2\n") != std::string::npos);
    CHECK(text.find("0.5,-1.25\n") != std::string::npos);
}
