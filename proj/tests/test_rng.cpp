#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "stord/rng.hpp"
#include "stord/variates.hpp"

using namespace stord;

TEST_CASE("xoshiro256** is reproducible from its seed")
{
    Xoshiro256 a(42);
    Xoshiro256 b(42);
    for (int i = 0; i < 1000; ++i)
    {
        REQUIRE(a() == b());
    }
    CHECK(a == b);
    Xoshiro256 c(43);
    CHECK(c() != Xoshiro256(42)());
}

TEST_CASE("splitmix64 reference values")
{
    // First outputs of SplitMix64 from state 0 (Vigna's reference).
    std::uint64_t state = 0;
    CHECK(splitmix64(state) == 0xE220A8397B1DCDAFull);
    CHECK(splitmix64(state) == 0x6E789E6AA1B965F4ull);
    CHECK(splitmix64(state) == 0x06C45D188009454Full);
}

TEST_CASE("streams split by seed, index and purpose")
{
    std::set<std::uint64_t> firsts;
    for (std::uint64_t seed : {1ull, 2ull})
    {
        for (std::uint64_t index = 0; index < 50; ++index)
        {
            for (auto p : {StreamPurpose::pattern, StreamPurpose::interferer_fading, StreamPurpose::desired_link,
                           StreamPurpose::redraw, StreamPurpose::bootstrap})
            {
                firsts.insert(make_stream(seed, index, p)());
            }
        }
    }
    CHECK(firsts.size() == 2 * 50 * 5);
    CHECK(make_stream(7, 3, StreamPurpose::redraw) == make_stream(7, 3, StreamPurpose::redraw));
    CHECK(derive_seed(1, 1) != derive_seed(1, 2));
    CHECK(derive_seed(1, 1) == derive_seed(1, 1));
}

TEST_CASE("uniform variates stay in range")
{
    auto rng = make_stream(5, 0);
    double sum = 0;
    int const n = 200000;
    for (int i = 0; i < n; ++i)
    {
        double const u = uniform01(rng);
        double const v = uniform_open01(rng);
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        REQUIRE(v > 0.0);
        REQUIRE(v < 1.0);
        sum += u;
    }
    // mean 1/2, sd 1/sqrt(12 n)
    CHECK(std::abs(sum / n - 0.5) < 4.0 / std::sqrt(12.0 * n));
}

TEST_CASE("uniform_index is unbiased over a small range")
{
    auto rng = make_stream(9, 1);
    int counts[7] = {};
    int const n = 70000;
    for (int i = 0; i < n; ++i)
    {
        auto const k = uniform_index(rng, 7);
        REQUIRE(k < 7);
        ++counts[k];
    }
    double chi2 = 0;
    for (int c : counts)
    {
        chi2 += (c - n / 7.0) * (c - n / 7.0) / (n / 7.0);
    }
    CHECK(chi2 < 22.46);  // chi-square(6) 0.999 quantile
}

TEST_CASE("polynomial sincos agrees with libm")
{
    double worst = 0;
    for (int i = 0; i <= 100000; ++i)
    {
        double const u = i / 100000.0;
        double s = 0;
        double c = 0;
        sincos_turns(u, s, c);
        double const angle = 2.0 * M_PI * u;
        worst = std::max({worst, std::abs(s - std::sin(angle)), std::abs(c - std::cos(angle))});
    }
    CHECK(worst < 1e-14);
}

TEST_CASE("gamma sampler moments")
{
    for (double shape : {0.3, 1.0, 2.0, 7.5})
    {
        CAPTURE(shape);
        auto rng = make_stream(11, static_cast<std::uint64_t>(shape * 10));
        int const n = 200000;
        double const scale = 0.7;
        double sum = 0;
        double sum2 = 0;
        for (int i = 0; i < n; ++i)
        {
            double const x = sample_gamma(shape, scale, rng);
            REQUIRE(x >= 0.0);
            sum += x;
            sum2 += x * x;
        }
        double const mean = sum / n;
        double const var = sum2 / n - mean * mean;
        double const true_mean = shape * scale;
        double const true_var = shape * scale * scale;
        CHECK(std::abs(mean - true_mean) < 4.0 * std::sqrt(true_var / n));
        CHECK(var == doctest::Approx(true_var).epsilon(0.03));
    }
}
