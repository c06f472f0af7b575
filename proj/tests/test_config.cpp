#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "stord/config.hpp"
#include "stord/experiment.hpp"

using namespace stord;

namespace
{
constexpr char const* minimal = R"(name: tiny
n_replicates: 2000
scenarios:
  - label: a
    process: {type: ppp, intensity: 0.2}
    window: {dimension: 2, radius: 10}
    interferer_fading: {type: rayleigh}
    pathloss: {a: 1, b: 1, delta: 4}
  - label: b
    process: {type: ppp, intensity: 0.3}
    window: {dimension: 2, radius: 10}
    interferer_fading: {type: nakagami, m: 2}
    pathloss: {a: 1, b: 1, delta: 4}
comparisons:
  - {kind: sir_cdf, left: a, right: b}
)";

std::string replace(std::string text, std::string const& from, std::string const& to)
{
    auto const pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    return text.replace(pos, from.size(), to);
}

ConfigError parse_error(std::string const& text)
{
    try
    {
        parse_config(text, "test.yaml");
    }
    catch (ConfigError const& e)
    {
        return e;
    }
    FAIL("expected a ConfigError");
    return ConfigError("unreachable");
}

}  // namespace

TEST_CASE("minimal config parses with defaults filled")
{
    auto const cfg = parse_config(minimal);
    CHECK(cfg.name == "tiny");
    CHECK(cfg.output_dir == "tiny");
    CHECK(cfg.seed == 1);
    CHECK(cfg.coupling == Coupling::independent);
    REQUIRE(cfg.scenarios.size() == 2);
    CHECK(cfg.scenarios[1].interferer_fading == FadingModel::nakagami(2));
    CHECK(cfg.scenarios[0].desired_fading == FadingModel::rayleigh());
    REQUIRE(cfg.comparisons.size() == 1);
    CHECK(cfg.comparisons[0].name == "sir_cdf_a_vs_b");
    CHECK_FALSE(cfg.comparisons[0].expect.has_value());
}

TEST_CASE("canonical form round-trips to an identical hash")
{
    auto const cfg = parse_config(minimal);
    auto const text = to_yaml(cfg);
    auto const again = parse_config(text);
    CHECK(to_yaml(again) == text);
    CHECK(config_hash(again) == config_hash(cfg));
    CHECK(config_hash(cfg).size() == 64);
}

TEST_CASE("every builtin round-trips through export and re-import")
{
    auto const names = list_builtins();
    CHECK(names.size() >= 10);
    for (auto const& name : names)
    {
        CAPTURE(name);
        auto const cfg = builtin_config(name);
        auto const text = to_yaml(cfg);
        auto const back = parse_config(text, name + ".yaml");
        CHECK(config_hash(back) == config_hash(cfg));
        CHECK(back.scenarios.size() == cfg.scenarios.size());
        for (std::size_t k = 0; k < cfg.scenarios.size(); ++k)
        {
            CHECK(back.scenarios[k].pathloss == cfg.scenarios[k].pathloss);
            CHECK(back.scenarios[k].process == cfg.scenarios[k].process);
            CHECK(back.scenarios[k].interferer_fading == cfg.scenarios[k].interferer_fading);
        }
    }
    CHECK_THROWS_AS(builtin_config("fig99"), std::invalid_argument);
    CHECK(is_builtin("oracle_eq15"));
}

TEST_CASE("compensated path loss keeps its symbolic form")
{
    auto const cfg = builtin_config("fig4_pathloss_ppp");
    auto const& g2 = cfg.scenario("g2").pathloss;
    CHECK(g2.b == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(g2.compensated_from == 4.0);
    CHECK(to_yaml(cfg).find("auto(4)") != std::string::npos);
}

TEST_CASE("SHA-256 known answer")
{
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("unknown keys are rejected with line and field")
{
    auto const text = replace(minimal, "interferer_fading: {type: nakagami, m: 2}",
                              "interferer_fading: {type: nakagami, mm: 2}");
    auto const e = parse_error(text);
    CHECK(e.field() == "scenarios[1].interferer_fading.mm");
    CHECK(e.line() == 12);
    CHECK(std::string(e.what()).rfind("test.yaml:12:", 0) == 0);
    CHECK(e.message().find("allowed") != std::string::npos);
}

TEST_CASE("top-level typo")
{
    auto const e = parse_error(replace(minimal, "n_replicates:", "n_replicate:"));
    CHECK(e.field() == "n_replicate");
    CHECK(e.line() == 2);
}

TEST_CASE("type and value errors are located")
{
    SUBCASE("non-numeric delta")
    {
        auto const e = parse_error(replace(minimal, "delta: 4}\n  - label: b", "delta: four}\n  - label: b"));
        CHECK(e.field() == "scenarios[0].pathloss.delta");
        CHECK(e.line() == 8);
    }
    SUBCASE("path loss exponent not above the dimension")
    {
        auto const e = parse_error(replace(minimal, "delta: 4}\n  - label: b", "delta: 2}\n  - label: b"));
        CHECK(e.field().rfind("scenarios[0]", 0) == 0);
        CHECK(e.line() >= 4);
    }
    SUBCASE("unknown comparison label")
    {
        auto const e = parse_error(replace(minimal, "right: b}", "right: c}"));
        CHECK(e.field() == "comparisons[0].right");
        CHECK(e.line() == 15);
    }
    SUBCASE("paired kind without right label")
    {
        auto const e = parse_error(replace(minimal, ", right: b}", "}"));
        CHECK(e.field() == "comparisons[0].right");
    }
    SUBCASE("too few replicates")
    {
        auto const e = parse_error(replace(minimal, "n_replicates: 2000", "n_replicates: 20"));
        CHECK(e.field() == "n_replicates");
        CHECK(e.line() == 2);
    }
    SUBCASE("duplicate label")
    {
        auto const e = parse_error(replace(minimal, "label: b", "label: a"));
        CHECK(e.field() == "scenarios[1].label");
    }
    SUBCASE("unknown fading type")
    {
        auto const e = parse_error(replace(minimal, "type: rayleigh", "type: rician"));
        CHECK(e.field() == "scenarios[0].interferer_fading.type");
        CHECK(e.line() == 7);
    }
    SUBCASE("unknown relation")
    {
        auto const e = parse_error(replace(minimal, "right: b}", "right: b, expect: Smaller}"));
        CHECK(e.field() == "comparisons[0].expect");
    }
    SUBCASE("field not valid for the kind")
    {
        auto const e = parse_error(replace(minimal, "right: b}", "right: b, tolerance: 3}"));
        CHECK(e.field() == "comparisons[0].tolerance");
    }
    SUBCASE("mixture mean mismatch")
    {
        auto const e = parse_error(replace(minimal, "process: {type: ppp, intensity: 0.2}",
                                           "process: {type: mixed_poisson, intensity: 0.3, law: {type: discrete, "
                                           "atoms: [[0.1, 0.5], [0.3, 0.5]]}}"));
        CHECK(e.field().rfind("scenarios[0].process", 0) == 0);
        CHECK(e.line() == 5);
    }
    SUBCASE("output directory escaping the root")
    {
        auto const e = parse_error(replace(minimal, "name: tiny\n", "name: tiny\noutput_dir: ../x\n"));
        CHECK(e.field() == "output_dir");
    }
    SUBCASE("malformed YAML")
    {
        auto const e = parse_error("name: [unclosed\n");
        CHECK(e.line() >= 1);
    }
}

TEST_CASE("loading from disk")
{
    auto const dir = std::filesystem::temp_directory_path() / "stord_config_test";
    std::filesystem::create_directories(dir);
    auto const path = dir / "tiny.yaml";
    std::ofstream(path) << minimal;
    CHECK(load_config(path).name == "tiny");
    CHECK_THROWS(load_config(dir / "missing.yaml"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("comparison kind names")
{
    for (auto k : {ComparisonKind::interference_cdf, ComparisonKind::sir_cdf, ComparisonKind::lt_curve,
                   ComparisonKind::capacity, ComparisonKind::lf_probe, ComparisonKind::lt_oracle,
                   ComparisonKind::mean_oracle, ComparisonKind::mean_equal})
    {
        CHECK(comparison_kind_from_string(to_string(k)) == k);
    }
    CHECK_FALSE(is_paired(ComparisonKind::lt_oracle));
    CHECK(is_paired(ComparisonKind::capacity));
}
