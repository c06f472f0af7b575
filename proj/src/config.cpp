#include "stord/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <span>
#include <sstream>

#include <openssl/evp.h>
#include <yaml-cpp/yaml.h>

#include "stord/csv.hpp"

namespace stord
{
namespace
{
template<class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};

constexpr ComparisonKind all_kinds[] = {
    ComparisonKind::interference_cdf,
    ComparisonKind::sir_cdf,
    ComparisonKind::lt_curve,
    ComparisonKind::capacity,
    ComparisonKind::lf_probe,
    ComparisonKind::lt_oracle,
    ComparisonKind::mean_oracle,
    ComparisonKind::mean_equal,
};

//---------------------------------------------------------------------------//
// Reading
//---------------------------------------------------------------------------//
[[noreturn]] void fail(YAML::Node const& node, std::string const& field, std::string const& message)
{
    int line = 0;
    int column = 0;
    if (node.IsDefined())
    {
        auto const mark = node.Mark();
        if (!mark.is_null())
        {
            line = mark.line + 1;
            column = mark.column + 1;
        }
    }
    throw ConfigError(message, field, line, column);
}

std::string join(std::string const& path, std::string_view key)
{
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string index_path(std::string const& path, std::size_t i)
{
    return path + "[" + std::to_string(i) + "]";
}

using Keys = std::span<std::string_view const>;

void check_keys(YAML::Node const& node, std::string const& path, Keys allowed)
{
    if (!node.IsMap())
    {
        fail(node, path, "expected a mapping");
    }
    std::set<std::string> seen;
    for (auto const& kv : node)
    {
        auto const key = kv.first.as<std::string>();
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
        {
            std::string list;
            for (auto k : allowed)
            {
                list += (list.empty() ? "" : ", ") + std::string(k);
            }
            fail(kv.first, join(path, key), "unknown key '" + key + "' (allowed: " + list + ")");
        }
        if (!seen.insert(key).second)
        {
            fail(kv.first, join(path, key), "duplicate key '" + key + "'");
        }
    }
}

void check_keys(YAML::Node const& node, std::string const& path, std::initializer_list<std::string_view> allowed)
{
    check_keys(node, path, Keys(allowed.begin(), allowed.size()));
}

YAML::Node require(YAML::Node const& map, std::string_view key, std::string const& path)
{
    YAML::Node child = map[std::string(key)];
    if (!child.IsDefined() || child.IsNull())
    {
        fail(map, join(path, key), "missing required key '" + std::string(key) + "'");
    }
    return child;
}

double as_double(YAML::Node const& node, std::string const& field)
{
    if (!node.IsScalar())
    {
        fail(node, field, "expected a number");
    }
    auto const text = node.Scalar();
    if (text == "inf" || text == ".inf")
    {
        return std::numeric_limits<double>::infinity();
    }
    std::istringstream is(text);
    double value = 0;
    is >> value;
    if (is.fail() || !is.eof())
    {
        fail(node, field, "expected a number, got '" + text + "'");
    }
    return value;
}

std::int64_t as_integer(YAML::Node const& node, std::string const& field)
{
    double const value = as_double(node, field);
    if (!(std::abs(value) < 9.0e15) || value != std::floor(value))
    {
        fail(node, field, "expected an integer, got '" + node.Scalar() + "'");
    }
    return static_cast<std::int64_t>(value);
}

std::uint64_t as_seed(YAML::Node const& node, std::string const& field)
{
    if (!node.IsScalar())
    {
        fail(node, field, "expected an unsigned integer");
    }
    auto const text = node.Scalar();
    if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }))
    {
        fail(node, field, "expected an unsigned integer, got '" + text + "'");
    }
    try
    {
        return std::stoull(text);
    }
    catch (std::exception const&)
    {
        fail(node, field, "seed out of range: '" + text + "'");
    }
}

std::string as_string(YAML::Node const& node, std::string const& field)
{
    if (!node.IsScalar())
    {
        fail(node, field, "expected a string");
    }
    return node.Scalar();
}

bool as_bool(YAML::Node const& node, std::string const& field)
{
    auto const text = as_string(node, field);
    if (text == "true")
    {
        return true;
    }
    if (text == "false")
    {
        return false;
    }
    fail(node, field, "expected true or false, got '" + text + "'");
}

std::vector<double> as_double_list(YAML::Node const& node, std::string const& field)
{
    if (!node.IsSequence())
    {
        fail(node, field, "expected a list of numbers");
    }
    std::vector<double> values;
    for (std::size_t i = 0; i < node.size(); ++i)
    {
        values.push_back(as_double(node[i], index_path(field, i)));
    }
    return values;
}

double optional_double(YAML::Node const& map, std::string_view key, std::string const& path, double fallback)
{
    auto const child = map[std::string(key)];
    return child.IsDefined() ? as_double(child, join(path, key)) : fallback;
}

//! Rethrow library validation errors with the location of the offending node.
template<class F>
auto located(YAML::Node const& node, std::string const& field, F&& f)
{
    try
    {
        return f();
    }
    catch (ConfigError const&)
    {
        throw;
    }
    catch (std::exception const& e)
    {
        fail(node, field, e.what());
    }
}

FadingModel read_fading(YAML::Node const& node, std::string const& path)
{
    if (!node.IsMap())
    {
        fail(node, path, "expected a fading mapping with a 'type' key");
    }
    auto const type = as_string(require(node, "type", path), join(path, "type"));
    return located(node, path, [&]() {
        if (type == "rayleigh")
        {
            check_keys(node, path, {"type"});
            return FadingModel::rayleigh();
        }
        if (type == "deterministic")
        {
            check_keys(node, path, {"type", "power"});
            return FadingModel::deterministic(optional_double(node, "power", path, 1.0));
        }
        if (type == "nakagami")
        {
            check_keys(node, path, {"type", "m"});
            return FadingModel::nakagami(as_double(require(node, "m", path), join(path, "m")));
        }
        if (type == "ricean")
        {
            check_keys(node, path, {"type", "K"});
            return FadingModel::ricean(as_double(require(node, "K", path), join(path, "K")));
        }
        if (type == "composite")
        {
            check_keys(node, path, {"type", "multipath", "sigma_db", "normalized"});
            auto const base = read_fading(require(node, "multipath", path), join(path, "multipath"));
            LognormalShadow shadow;
            shadow.sigma_db = as_double(require(node, "sigma_db", path), join(path, "sigma_db"));
            if (auto n = node["normalized"]; n.IsDefined())
            {
                shadow.normalized = as_bool(n, join(path, "normalized"));
            }
            return FadingModel::composite(base, shadow);
        }
        fail(node["type"], join(path, "type"),
             "unknown fading type '" + type + "' (allowed: rayleigh, deterministic, nakagami, ricean, composite)");
    });
}

ProcessSpec read_process(YAML::Node const& node, std::string const& path)
{
    if (!node.IsMap())
    {
        fail(node, path, "expected a process mapping with a 'type' key");
    }
    auto const type = as_string(require(node, "type", path), join(path, "type"));
    auto num = [&](std::string_view key) { return as_double(require(node, key, path), join(path, key)); };
    if (type == "ppp")
    {
        check_keys(node, path, {"type", "intensity"});
        return Poisson{num("intensity")};
    }
    if (type == "thomas" || type == "matern_cluster")
    {
        bool const thomas = type == "thomas";
        check_keys(node, path, {"type", "parent_intensity", "mean_daughters", thomas ? "sigma" : "radius"});
        NeymanScott ns;
        ns.parent_intensity = num("parent_intensity");
        ns.mean_daughters = num("mean_daughters");
        ns.dispersion.kind = thomas ? Dispersion::Kind::gaussian : Dispersion::Kind::uniform_disk;
        ns.dispersion.scale = num(thomas ? "sigma" : "radius");
        return ns;
    }
    if (type == "mixed_poisson")
    {
        check_keys(node, path, {"type", "intensity", "law"});
        auto const law_node = require(node, "law", path);
        auto const law_path = join(path, "law");
        if (!law_node.IsMap())
        {
            fail(law_node, law_path, "expected a law mapping with a 'type' key");
        }
        auto const law_type = as_string(require(law_node, "type", law_path), join(law_path, "type"));
        MixedPoisson mp;
        if (law_type == "discrete")
        {
            check_keys(law_node, law_path, {"type", "atoms"});
            auto const atoms = require(law_node, "atoms", law_path);
            auto const atoms_path = join(law_path, "atoms");
            if (!atoms.IsSequence())
            {
                fail(atoms, atoms_path, "expected a list of [intensity, weight] pairs");
            }
            DiscreteMixture mix;
            for (std::size_t i = 0; i < atoms.size(); ++i)
            {
                auto const pair = as_double_list(atoms[i], index_path(atoms_path, i));
                if (pair.size() != 2)
                {
                    fail(atoms[i], index_path(atoms_path, i), "expected [intensity, weight]");
                }
                mix.atoms.emplace_back(pair[0], pair[1]);
            }
            mp.intensity_law = mix;
        }
        else if (law_type == "gamma")
        {
            check_keys(law_node, law_path, {"type", "shape", "scale"});
            mp.intensity_law = GammaMixture{as_double(require(law_node, "shape", law_path), join(law_path, "shape")),
                                            as_double(require(law_node, "scale", law_path), join(law_path, "scale"))};
        }
        else
        {
            fail(law_node["type"], join(law_path, "type"),
                 "unknown law type '" + law_type + "' (allowed: discrete, gamma)");
        }
        mp.intensity = law_mean(mp);
        if (auto declared = node["intensity"]; declared.IsDefined())
        {
            double const value = as_double(declared, join(path, "intensity"));
            if (std::abs(value - mp.intensity) > 1e-9 * std::max(1.0, mp.intensity))
            {
                fail(declared, join(path, "intensity"),
                     "declared intensity " + format_double(value) + " differs from the law mean "
                         + format_double(mp.intensity));
            }
        }
        return mp;
    }
    if (type == "binomial")
    {
        check_keys(node, path, {"type", "count", "radius"});
        return Binomial{as_integer(require(node, "count", path), join(path, "count")), num("radius")};
    }
    fail(node["type"], join(path, "type"),
         "unknown process type '" + type + "' (allowed: ppp, thomas, matern_cluster, mixed_poisson, binomial)");
}

Window read_window(YAML::Node const& node, std::string const& path)
{
    check_keys(node, path, {"dimension", "radius", "guard_radius"});
    Window w;
    if (auto d = node["dimension"]; d.IsDefined())
    {
        w.dimension = static_cast<int>(as_integer(d, join(path, "dimension")));
    }
    w.radius = optional_double(node, "radius", path, w.radius);
    w.guard_radius = optional_double(node, "guard_radius", path, w.guard_radius);
    located(node, path, [&]() {
        w.validate();
        return 0;
    });
    return w;
}

PathLoss read_pathloss(YAML::Node const& node, std::string const& path, int dimension)
{
    check_keys(node, path, {"a", "b", "delta"});
    auto const a = as_integer(require(node, "a", path), join(path, "a"));
    double const delta = as_double(require(node, "delta", path), join(path, "delta"));
    auto const b_node = require(node, "b", path);
    auto const b_text = as_string(b_node, join(path, "b"));
    return located(b_node, join(path, "b"), [&]() {
        if (b_text.rfind("auto(", 0) == 0 && b_text.back() == ')')
        {
            YAML::Node inner(b_text.substr(5, b_text.size() - 6));
            double const delta1 = as_double(inner, join(path, "b"));
            if (a != 1)
            {
                throw std::invalid_argument("compensated b requires a = 1");
            }
            return PathLoss::compensated(delta1, delta, dimension);
        }
        return make_pathloss(static_cast<int>(a), as_double(b_node, join(path, "b")), delta, dimension);
    });
}

Scenario read_scenario(YAML::Node const& node, std::string const& path)
{
    check_keys(node, path,
               {"label", "process", "window", "interferer_fading", "pathloss", "desired_fading", "noise"});
    Scenario sc;
    sc.label = as_string(require(node, "label", path), join(path, "label"));
    sc.process = read_process(require(node, "process", path), join(path, "process"));
    if (auto w = node["window"]; w.IsDefined())
    {
        sc.window = read_window(w, join(path, "window"));
    }
    sc.interferer_fading = read_fading(require(node, "interferer_fading", path), join(path, "interferer_fading"));
    sc.pathloss = read_pathloss(require(node, "pathloss", path), join(path, "pathloss"), sc.window.dimension);
    if (auto d = node["desired_fading"]; d.IsDefined())
    {
        sc.desired_fading = read_fading(d, join(path, "desired_fading"));
    }
    sc.noise = optional_double(node, "noise", path, 0.0);
    located(node, path, [&]() {
        sc.validate();
        return 0;
    });
    return sc;
}

std::span<std::string_view const> comparison_keys(ComparisonKind kind)
{
    static constexpr std::string_view ordering[] = {"kind", "name", "left", "right", "expect", "grid"};
    static constexpr std::string_view capacity[] = {"kind", "name", "left", "right", "expect", "noise_levels"};
    static constexpr std::string_view lt_oracle[] = {"kind", "name", "left", "s_values", "tolerance", "oracle"};
    static constexpr std::string_view mean_oracle[] = {"kind", "name", "left", "tolerance", "oracle"};
    static constexpr std::string_view mean_equal[] = {"kind", "name", "left", "right", "tolerance"};
    switch (kind)
    {
        case ComparisonKind::interference_cdf:
        case ComparisonKind::sir_cdf:
        case ComparisonKind::lt_curve:
        case ComparisonKind::lf_probe:
            return ordering;
        case ComparisonKind::capacity:
            return capacity;
        case ComparisonKind::lt_oracle:
            return lt_oracle;
        case ComparisonKind::mean_oracle:
            return mean_oracle;
        case ComparisonKind::mean_equal:
            return mean_equal;
    }
    return {};
}

Comparison read_comparison(YAML::Node const& node, std::string const& path)
{
    if (!node.IsMap())
    {
        fail(node, path, "expected a comparison mapping");
    }
    Comparison c;
    auto const kind_node = require(node, "kind", path);
    auto const kind_text = as_string(kind_node, join(path, "kind"));
    c.kind = located(kind_node, join(path, "kind"), [&]() { return comparison_kind_from_string(kind_text); });
    check_keys(node, path, comparison_keys(c.kind));

    c.left = as_string(require(node, "left", path), join(path, "left"));
    if (is_paired(c.kind))
    {
        c.right = as_string(require(node, "right", path), join(path, "right"));
    }
    if (auto n = node["name"]; n.IsDefined())
    {
        c.name = as_string(n, join(path, "name"));
    }
    if (auto e = node["expect"]; e.IsDefined())
    {
        auto const text = as_string(e, join(path, "expect"));
        c.expect = located(e, join(path, "expect"), [&]() { return relation_from_string(text); });
    }
    if (auto g = node["grid"]; g.IsDefined())
    {
        c.grid = as_double_list(g, join(path, "grid"));
    }
    if (auto g = node["noise_levels"]; g.IsDefined())
    {
        c.noise_levels = as_double_list(g, join(path, "noise_levels"));
    }
    if (auto g = node["s_values"]; g.IsDefined())
    {
        c.s_values = as_double_list(g, join(path, "s_values"));
    }
    if (auto t = node["tolerance"]; t.IsDefined())
    {
        c.tolerance = as_double(t, join(path, "tolerance"));
    }
    if (auto o = node["oracle"]; o.IsDefined())
    {
        c.oracle = as_string(o, join(path, "oracle"));
    }
    return c;
}

bool filename_safe(std::string const& s)
{
    return !s.empty() && s != "." && s != ".."
           && std::all_of(s.begin(), s.end(), [](char ch) {
                  return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9')
                         || ch == '_' || ch == '-' || ch == '.';
              });
}

//! Fill kind-dependent defaults that need the scenarios.
void resolve_defaults(ExperimentConfig& cfg)
{
    if (cfg.output_dir.empty())
    {
        cfg.output_dir = cfg.name;
    }
    for (auto& c : cfg.comparisons)
    {
        if (c.name.empty())
        {
            c.name = std::string(to_string(c.kind)) + "_" + c.left + (c.right.empty() ? "" : "_vs_" + c.right);
        }
        bool const known = std::any_of(cfg.scenarios.begin(), cfg.scenarios.end(),
                                       [&](Scenario const& s) { return s.label == c.left; });
        switch (c.kind)
        {
            case ComparisonKind::capacity:
                if (c.noise_levels.empty() && known)
                {
                    c.noise_levels = {cfg.scenario(c.left).noise};
                }
                break;
            case ComparisonKind::lt_oracle:
                if (c.s_values.empty())
                {
                    c.s_values = {0.1, 1.0, 10.0};
                }
                if (c.tolerance == 0)
                {
                    c.tolerance = 3.0;
                }
                if (c.oracle.empty() && known)
                {
                    c.oracle = cfg.scenario(c.left).pathloss.singular() ? "ppp_singular" : "ppp_window";
                }
                break;
            case ComparisonKind::mean_oracle:
                if (c.tolerance == 0)
                {
                    c.tolerance = 0.01;
                }
                if (c.oracle.empty())
                {
                    c.oracle = "campbell_infinite";
                }
                break;
            case ComparisonKind::mean_equal:
                if (c.tolerance == 0)
                {
                    c.tolerance = 3.0;
                }
                break;
            default:
                break;
        }
    }
}

//---------------------------------------------------------------------------//
// Writing
//---------------------------------------------------------------------------//
void emit_number(YAML::Emitter& out, double value)
{
    out << format_double(value);
}

void emit_list(YAML::Emitter& out, std::vector<double> const& values)
{
    out << YAML::Flow << YAML::BeginSeq;
    for (double v : values)
    {
        emit_number(out, v);
    }
    out << YAML::EndSeq;
}

void emit_fading(YAML::Emitter& out, FadingModel const& f)
{
    out << YAML::Flow << YAML::BeginMap;
    std::visit(overloaded{
                   [&](Deterministic const& d) {
                       out << YAML::Key << "type" << YAML::Value << "deterministic";
                       out << YAML::Key << "power" << YAML::Value;
                       emit_number(out, d.power);
                   },
                   [&](RayleighPower const&) { out << YAML::Key << "type" << YAML::Value << "rayleigh"; },
                   [&](NakagamiPower const& n) {
                       out << YAML::Key << "type" << YAML::Value << "nakagami";
                       out << YAML::Key << "m" << YAML::Value;
                       emit_number(out, n.m);
                   },
                   [&](RiceanPower const& r) {
                       out << YAML::Key << "type" << YAML::Value << "ricean";
                       out << YAML::Key << "K" << YAML::Value;
                       emit_number(out, r.K);
                   },
                   [&](Composite const& c) {
                       out << YAML::Key << "type" << YAML::Value << "composite";
                       out << YAML::Key << "multipath" << YAML::Value;
                       emit_fading(out, *c.multipath);
                       out << YAML::Key << "sigma_db" << YAML::Value;
                       emit_number(out, c.shadow.sigma_db);
                       out << YAML::Key << "normalized" << YAML::Value << (c.shadow.normalized ? "true" : "false");
                   },
               },
               f.alternative());
    out << YAML::EndMap;
}

void emit_process(YAML::Emitter& out, ProcessSpec const& spec)
{
    out << YAML::BeginMap;
    auto field = [&](char const* key, double value) {
        out << YAML::Key << key << YAML::Value;
        emit_number(out, value);
    };
    std::visit(overloaded{
                   [&](Poisson const& p) {
                       out << YAML::Key << "type" << YAML::Value << "ppp";
                       field("intensity", p.intensity);
                   },
                   [&](NeymanScott const& ns) {
                       bool const thomas = ns.dispersion.kind == Dispersion::Kind::gaussian;
                       out << YAML::Key << "type" << YAML::Value << (thomas ? "thomas" : "matern_cluster");
                       field("parent_intensity", ns.parent_intensity);
                       field("mean_daughters", ns.mean_daughters);
                       field(thomas ? "sigma" : "radius", ns.dispersion.scale);
                   },
                   [&](MixedPoisson const& mp) {
                       out << YAML::Key << "type" << YAML::Value << "mixed_poisson";
                       field("intensity", mp.intensity);
                       out << YAML::Key << "law" << YAML::Value << YAML::BeginMap;
                       std::visit(overloaded{
                                      [&](DiscreteMixture const& m) {
                                          out << YAML::Key << "type" << YAML::Value << "discrete";
                                          out << YAML::Key << "atoms" << YAML::Value << YAML::BeginSeq;
                                          for (auto const& [x, w] : m.atoms)
                                          {
                                              emit_list(out, {x, w});
                                          }
                                          out << YAML::EndSeq;
                                      },
                                      [&](GammaMixture const& g) {
                                          out << YAML::Key << "type" << YAML::Value << "gamma";
                                          field("shape", g.shape);
                                          field("scale", g.scale);
                                      },
                                  },
                                  mp.intensity_law);
                       out << YAML::EndMap;
                   },
                   [&](Binomial const& b) {
                       out << YAML::Key << "type" << YAML::Value << "binomial";
                       out << YAML::Key << "count" << YAML::Value << b.count;
                       field("radius", b.radius);
                   },
               },
               spec);
    out << YAML::EndMap;
}

void emit_scenario(YAML::Emitter& out, Scenario const& sc)
{
    out << YAML::BeginMap;
    out << YAML::Key << "label" << YAML::Value << sc.label;
    out << YAML::Key << "process" << YAML::Value;
    emit_process(out, sc.process);
    out << YAML::Key << "window" << YAML::Value << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "dimension" << YAML::Value << sc.window.dimension;
    out << YAML::Key << "radius" << YAML::Value;
    emit_number(out, sc.window.radius);
    out << YAML::Key << "guard_radius" << YAML::Value;
    emit_number(out, sc.window.guard_radius);
    out << YAML::EndMap;
    out << YAML::Key << "interferer_fading" << YAML::Value;
    emit_fading(out, sc.interferer_fading);
    out << YAML::Key << "pathloss" << YAML::Value << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "a" << YAML::Value << sc.pathloss.a;
    out << YAML::Key << "b" << YAML::Value;
    if (sc.pathloss.compensated_from)
    {
        out << "auto(" + format_double(*sc.pathloss.compensated_from) + ")";
    }
    else
    {
        emit_number(out, sc.pathloss.b);
    }
    out << YAML::Key << "delta" << YAML::Value;
    emit_number(out, sc.pathloss.delta);
    out << YAML::EndMap;
    out << YAML::Key << "desired_fading" << YAML::Value;
    emit_fading(out, sc.desired_fading);
    out << YAML::Key << "noise" << YAML::Value;
    emit_number(out, sc.noise);
    out << YAML::EndMap;
}

void emit_comparison(YAML::Emitter& out, Comparison const& c)
{
    auto const keys = comparison_keys(c.kind);
    auto has = [&](std::string_view k) { return std::find(keys.begin(), keys.end(), k) != keys.end(); };
    out << YAML::BeginMap;
    out << YAML::Key << "kind" << YAML::Value << std::string(to_string(c.kind));
    out << YAML::Key << "name" << YAML::Value << c.name;
    out << YAML::Key << "left" << YAML::Value << c.left;
    if (has("right"))
    {
        out << YAML::Key << "right" << YAML::Value << c.right;
    }
    if (has("expect") && c.expect)
    {
        out << YAML::Key << "expect" << YAML::Value << std::string(to_string(*c.expect));
    }
    if (has("grid") && !c.grid.empty())
    {
        out << YAML::Key << "grid" << YAML::Value;
        emit_list(out, c.grid);
    }
    if (has("noise_levels"))
    {
        out << YAML::Key << "noise_levels" << YAML::Value;
        emit_list(out, c.noise_levels);
    }
    if (has("s_values"))
    {
        out << YAML::Key << "s_values" << YAML::Value;
        emit_list(out, c.s_values);
    }
    if (has("tolerance"))
    {
        out << YAML::Key << "tolerance" << YAML::Value;
        emit_number(out, c.tolerance);
    }
    if (has("oracle"))
    {
        out << YAML::Key << "oracle" << YAML::Value << c.oracle;
    }
    out << YAML::EndMap;
}

}  // namespace

//---------------------------------------------------------------------------//
std::string_view to_string(ComparisonKind kind)
{
    switch (kind)
    {
        case ComparisonKind::interference_cdf:
            return "interference_cdf";
        case ComparisonKind::sir_cdf:
            return "sir_cdf";
        case ComparisonKind::lt_curve:
            return "lt_curve";
        case ComparisonKind::capacity:
            return "capacity";
        case ComparisonKind::lf_probe:
            return "lf_probe";
        case ComparisonKind::lt_oracle:
            return "lt_oracle";
        case ComparisonKind::mean_oracle:
            return "mean_oracle";
        case ComparisonKind::mean_equal:
            return "mean_equal";
    }
    return "?";
}

ComparisonKind comparison_kind_from_string(std::string_view text)
{
    for (auto k : all_kinds)
    {
        if (to_string(k) == text)
        {
            return k;
        }
    }
    std::string allowed;
    for (auto k : all_kinds)
    {
        allowed += (allowed.empty() ? "" : ", ") + std::string(to_string(k));
    }
    throw std::invalid_argument("unknown comparison kind '" + std::string(text) + "' (allowed: " + allowed + ")");
}

bool is_paired(ComparisonKind kind)
{
    return kind != ComparisonKind::lt_oracle && kind != ComparisonKind::mean_oracle;
}

std::string_view to_string(Coupling c)
{
    return c == Coupling::independent ? "independent" : "common_random_numbers";
}

ConfigError::ConfigError(std::string message, std::string field, int line, int column, std::string source)
    : std::runtime_error([&] {
        std::string text = source.empty() ? std::string() : source + ":";
        if (line > 0)
        {
            text += std::to_string(line) + ":" + std::to_string(column) + ":";
        }
        if (!text.empty())
        {
            text += " ";
        }
        if (!field.empty())
        {
            text += field + ": ";
        }
        return text + message;
    }())
    , message_(std::move(message))
    , field_(std::move(field))
    , line_(line)
    , column_(column)
{
}

//---------------------------------------------------------------------------//
Scenario const& ExperimentConfig::scenario(std::string_view label) const
{
    return scenarios.at(scenario_index(label));
}

std::size_t ExperimentConfig::scenario_index(std::string_view label) const
{
    for (std::size_t i = 0; i < scenarios.size(); ++i)
    {
        if (scenarios[i].label == label)
        {
            return i;
        }
    }
    throw ConfigError("no scenario labelled '" + std::string(label) + "'");
}

void ExperimentConfig::validate() const
{
    if (!filename_safe(name))
    {
        throw ConfigError("experiment name must be nonempty and use only [A-Za-z0-9_.-]", "name");
    }
    if (!output_dir.empty() && (output_dir.find("..") != std::string::npos || output_dir.front() == '/'))
    {
        throw ConfigError("output_dir must be a relative path without '..'", "output_dir");
    }
    if (scenarios.empty())
    {
        throw ConfigError("at least one scenario is required", "scenarios");
    }
    if (n_replicates < static_cast<std::int64_t>(min_order_samples))
    {
        throw ConfigError("n_replicates must be at least " + std::to_string(min_order_samples), "n_replicates");
    }
    if (!(confidence > 0 && confidence < 1))
    {
        throw ConfigError("confidence must lie in (0, 1)", "confidence");
    }
    if (n_bootstrap < 200)
    {
        throw ConfigError("n_bootstrap must be at least 200", "n_bootstrap");
    }
    std::set<std::string> labels;
    for (std::size_t i = 0; i < scenarios.size(); ++i)
    {
        auto const field = index_path("scenarios", i) + ".label";
        if (!filename_safe(scenarios[i].label))
        {
            throw ConfigError("scenario labels must use only [A-Za-z0-9_.-]", field);
        }
        if (!labels.insert(scenarios[i].label).second)
        {
            throw ConfigError("duplicate scenario label '" + scenarios[i].label + "'", field);
        }
        try
        {
            scenarios[i].validate();
        }
        catch (std::invalid_argument const& e)
        {
            throw ConfigError(e.what(), index_path("scenarios", i));
        }
    }
    std::set<std::string> names;
    for (std::size_t i = 0; i < comparisons.size(); ++i)
    {
        auto const& c = comparisons[i];
        auto const path = index_path("comparisons", i);
        if (!filename_safe(c.name))
        {
            throw ConfigError("comparison names must use only [A-Za-z0-9_.-]", path + ".name");
        }
        if (!names.insert(c.name).second)
        {
            throw ConfigError("duplicate comparison name '" + c.name + "'", path + ".name");
        }
        if (!labels.count(c.left))
        {
            throw ConfigError("unknown scenario label '" + c.left + "'", path + ".left");
        }
        if (is_paired(c.kind))
        {
            if (!labels.count(c.right))
            {
                throw ConfigError("paired comparison needs a right-hand scenario; unknown label '" + c.right + "'",
                                  path + ".right");
            }
            if (c.right == c.left)
            {
                throw ConfigError("left and right name the same scenario", path + ".right");
            }
        }
        for (double g : c.grid)
        {
            if (!(g > 0) || !std::isfinite(g))
            {
                throw ConfigError("grid values must be positive and finite", path + ".grid");
            }
        }
        auto const& left = scenario(c.left);
        switch (c.kind)
        {
            case ComparisonKind::capacity:
                for (double w : c.noise_levels)
                {
                    if (!(w >= 0) || !std::isfinite(w))
                    {
                        throw ConfigError("noise levels must be finite and >= 0", path + ".noise_levels");
                    }
                }
                break;
            case ComparisonKind::lf_probe:
                if (!(left.window == scenario(c.right).window))
                {
                    throw ConfigError("Laplace functional probes need both scenarios on the same window", path);
                }
                break;
            case ComparisonKind::lt_oracle: {
                if (!std::holds_alternative<Poisson>(left.process))
                {
                    throw ConfigError("the Laplace transform oracle applies to Poisson scenarios only", path + ".left");
                }
                if (c.oracle == "ppp_singular")
                {
                    if (!left.pathloss.singular() || !(left.pathloss.delta > left.window.dimension))
                    {
                        throw ConfigError("ppp_singular needs singular path loss with delta > dimension",
                                          path + ".oracle");
                    }
                }
                else if (c.oracle != "ppp_window")
                {
                    throw ConfigError("unknown oracle '" + c.oracle + "' (allowed: ppp_singular, ppp_window)",
                                      path + ".oracle");
                }
                for (double s : c.s_values)
                {
                    if (!(s > 0) || !std::isfinite(s))
                    {
                        throw ConfigError("s values must be positive and finite", path + ".s_values");
                    }
                }
                if (!(c.tolerance > 0))
                {
                    throw ConfigError("tolerance must be positive", path + ".tolerance");
                }
                break;
            }
            case ComparisonKind::mean_oracle:
                if (c.oracle != "campbell_infinite" && c.oracle != "campbell_window")
                {
                    throw ConfigError(
                        "unknown oracle '" + c.oracle + "' (allowed: campbell_infinite, campbell_window)",
                        path + ".oracle");
                }
                if (left.pathloss.singular())
                {
                    throw ConfigError("the mean interference is infinite under singular path loss", path + ".left");
                }
                if (!(c.tolerance > 0))
                {
                    throw ConfigError("tolerance must be positive", path + ".tolerance");
                }
                break;
            case ComparisonKind::mean_equal:
                if (left.pathloss.singular() || scenario(c.right).pathloss.singular())
                {
                    throw ConfigError("the mean interference is infinite under singular path loss", path);
                }
                if (!(c.tolerance > 0))
                {
                    throw ConfigError("tolerance must be positive", path + ".tolerance");
                }
                break;
            default:
                break;
        }
    }
}

//---------------------------------------------------------------------------//
ExperimentConfig parse_config(std::string_view text, std::string const& source_name)
{
    YAML::Node root;
    try
    {
        root = YAML::Load(std::string(text));
    }
    catch (YAML::Exception const& e)
    {
        throw ConfigError(e.msg, {}, e.mark.is_null() ? 0 : e.mark.line + 1,
                          e.mark.is_null() ? 0 : e.mark.column + 1, source_name);
    }
    try
    {
        check_keys(root, "",
                   {"name", "description", "seed", "n_replicates", "coupling", "output_dir", "confidence",
                    "n_bootstrap", "scenarios", "comparisons"});
        ExperimentConfig cfg;
        cfg.name = as_string(require(root, "name", ""), "name");
        if (auto d = root["description"]; d.IsDefined())
        {
            cfg.description = as_string(d, "description");
        }
        if (auto s = root["seed"]; s.IsDefined())
        {
            cfg.seed = as_seed(s, "seed");
        }
        if (auto n = root["n_replicates"]; n.IsDefined())
        {
            cfg.n_replicates = as_integer(n, "n_replicates");
        }
        if (auto c = root["coupling"]; c.IsDefined())
        {
            auto const value = as_string(c, "coupling");
            if (value == "independent")
            {
                cfg.coupling = Coupling::independent;
            }
            else if (value == "common_random_numbers")
            {
                cfg.coupling = Coupling::common_random_numbers;
            }
            else
            {
                fail(c, "coupling",
                     "unknown coupling '" + value + "' (allowed: independent, common_random_numbers)");
            }
        }
        if (auto o = root["output_dir"]; o.IsDefined())
        {
            cfg.output_dir = as_string(o, "output_dir");
        }
        cfg.confidence = optional_double(root, "confidence", "", cfg.confidence);
        if (auto b = root["n_bootstrap"]; b.IsDefined())
        {
            cfg.n_bootstrap = static_cast<int>(as_integer(b, "n_bootstrap"));
        }
        auto const scenarios = require(root, "scenarios", "");
        if (!scenarios.IsSequence())
        {
            fail(scenarios, "scenarios", "expected a list of scenarios");
        }
        for (std::size_t i = 0; i < scenarios.size(); ++i)
        {
            cfg.scenarios.push_back(read_scenario(scenarios[i], index_path("scenarios", i)));
        }
        if (auto comparisons = root["comparisons"]; comparisons.IsDefined())
        {
            if (!comparisons.IsSequence())
            {
                fail(comparisons, "comparisons", "expected a list of comparisons");
            }
            for (std::size_t i = 0; i < comparisons.size(); ++i)
            {
                cfg.comparisons.push_back(read_comparison(comparisons[i], index_path("comparisons", i)));
            }
        }
        resolve_defaults(cfg);
        try
        {
            cfg.validate();
        }
        catch (ConfigError const& e)
        {
            // Attach a line by walking the field path back into the document.
            YAML::Node node = root;
            std::string remaining = e.field();
            std::string token;
            for (std::size_t pos = 0; pos <= remaining.size(); ++pos)
            {
                char const ch = pos < remaining.size() ? remaining[pos] : '.';
                if (ch == '.' || ch == '[')
                {
                    if (!token.empty() && node.IsMap() && node[token].IsDefined())
                    {
                        node = node[token];
                    }
                    token.clear();
                }
                else if (ch == ']')
                {
                    auto const idx = std::stoul(token);
                    if (node.IsSequence() && idx < node.size())
                    {
                        node = node[idx];
                    }
                    token.clear();
                }
                else
                {
                    token += ch;
                }
            }
            fail(node, e.field(), e.message());
        }
        return cfg;
    }
    catch (ConfigError const& e)
    {
        throw ConfigError(e.message(), e.field(), e.line(), e.column(), source_name);
    }
    catch (YAML::Exception const& e)
    {
        throw ConfigError(e.msg, {}, e.mark.is_null() ? 0 : e.mark.line + 1,
                          e.mark.is_null() ? 0 : e.mark.column + 1, source_name);
    }
}

ExperimentConfig load_config(std::filesystem::path const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw std::runtime_error("cannot open config file '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path.string());
}

std::string to_yaml(ExperimentConfig const& cfg)
{
    YAML::Emitter out;
    out << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << cfg.name;
    out << YAML::Key << "description" << YAML::Value << cfg.description;
    out << YAML::Key << "seed" << YAML::Value << cfg.seed;
    out << YAML::Key << "n_replicates" << YAML::Value << cfg.n_replicates;
    out << YAML::Key << "coupling" << YAML::Value << std::string(to_string(cfg.coupling));
    out << YAML::Key << "output_dir" << YAML::Value << cfg.output_dir;
    out << YAML::Key << "confidence" << YAML::Value;
    emit_number(out, cfg.confidence);
    out << YAML::Key << "n_bootstrap" << YAML::Value << cfg.n_bootstrap;
    out << YAML::Key << "scenarios" << YAML::Value << YAML::BeginSeq;
    for (auto const& sc : cfg.scenarios)
    {
        emit_scenario(out, sc);
    }
    out << YAML::EndSeq;
    out << YAML::Key << "comparisons" << YAML::Value << YAML::BeginSeq;
    for (auto const& c : cfg.comparisons)
    {
        emit_comparison(out, c);
    }
    out << YAML::EndSeq;
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

std::string sha256_hex(std::string_view bytes)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    {
        throw std::runtime_error("SHA-256 digest failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string result;
    for (unsigned int i = 0; i < length; ++i)
    {
        result += hex[digest[i] >> 4];
        result += hex[digest[i] & 0xF];
    }
    return result;
}

std::string config_hash(ExperimentConfig const& cfg)
{
    return sha256_hex(to_yaml(cfg));
}

}  // namespace stord
