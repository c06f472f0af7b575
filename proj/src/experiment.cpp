#include "stord/experiment.hpp"

#include <algorithm>
#include <cmath>

#include "stord/csv.hpp"
#include "stord/numerics.hpp"
#include "stord/parallel.hpp"

namespace stord
{
namespace
{
using Json = nlohmann::ordered_json;

//! JSON cannot carry non-finite numbers; write them as strings.
Json number(double value)
{
    if (std::isfinite(value))
    {
        return value;
    }
    return format_double(value);
}

Json number_list(std::vector<double> const& values)
{
    Json list = Json::array();
    for (double v : values)
    {
        list.push_back(number(v));
    }
    return list;
}

class ArtifactWriter
{
  public:
    ArtifactWriter(std::filesystem::path dir, bool enabled) : dir_(std::move(dir)), enabled_(enabled) {}

    void write(std::string const& name, std::string const& content)
    {
        if (enabled_)
        {
            write_file_atomic(dir_ / name, content);
        }
        files_.emplace_back(name, sha256_hex(content), content.size());
    }

    std::vector<std::tuple<std::string, std::string, std::size_t>> const& files() const { return files_; }

  private:
    std::filesystem::path dir_;
    bool enabled_;
    std::vector<std::tuple<std::string, std::string, std::size_t>> files_;
};

std::string curve_csv(EmpiricalCurve const& curve, char const* abscissa)
{
    std::string out = std::string(abscissa) + ",value,half_width,n\n";
    for (std::size_t i = 0; i < curve.abscissae.size(); ++i)
    {
        out += format_double(curve.abscissae[i]) + "," + format_double(curve.values[i]) + ","
               + format_double(curve.half_widths[i]) + "," + std::to_string(curve.n_replicates) + "\n";
    }
    return out;
}

std::string replicates_csv(std::vector<ReplicateResult> const& rows)
{
    std::string out = "replicate,I,SIR,SINR,capacity_term\n";
    out.reserve(rows.size() * 64);
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        auto const& r = rows[i];
        out += std::to_string(i);
        for (double v : {r.interference, r.sir, r.sinr, r.capacity_term})
        {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

Json verdict_json(OrderVerdict const& v)
{
    Json j;
    j["order"] = v.order;
    j["relation"] = std::string(to_string(v.relation));
    j["confidence"] = v.confidence;
    j["bootstrap_seed"] = v.seed;
    if (v.probe_limited)
    {
        j["probe_limited"] = true;
    }
    j["grid"] = number_list(v.grid);
    j["margins"] = number_list(v.margins);
    j["lower"] = number_list(v.lower);
    j["upper"] = number_list(v.upper);
    auto const best = std::max_element(v.margins.begin(), v.margins.end());
    auto const worst = std::min_element(v.margins.begin(), v.margins.end());
    if (best != v.margins.end())
    {
        j["max_margin"] = number(*best);
        j["min_margin"] = number(*worst);
    }
    return j;
}

//! CDF view of a CCDF curve.
EmpiricalCurve as_cdf(EmpiricalCurve curve)
{
    for (double& v : curve.values)
    {
        v = 1.0 - v;
    }
    return curve;
}

//! Binomial-vs-Poisson condition λ∫_{B_0(r)}[1 − L_h(s g)]dx maximized over the grid, when one side is binomial.
std::optional<Json> binomial_condition(Scenario const& a, Scenario const& b, std::vector<double> const& grid)
{
    for (auto const* sc : {&a, &b})
    {
        auto const* bin = std::get_if<Binomial>(&sc->process);
        if (!bin)
        {
            continue;
        }
        double const lambda = mean_intensity(sc->process, sc->window);
        ProbeFunction const u{"interference", sc->pathloss, sc->interferer_fading};
        double worst = 0;
        for (double s : grid)
        {
            worst = std::max(worst,
                             lf_exponent(lambda, u, s, sc->window.dimension, sc->window.guard_radius, bin->radius));
        }
        Json j;
        j["intensity"] = lambda;
        j["value"] = worst;
        j["count"] = bin->count;
        j["holds"] = worst <= static_cast<double>(bin->count);
        return j;
    }
    return std::nullopt;
}

std::vector<double> capacity_terms(std::vector<ReplicateResult> const& rows, double noise)
{
    std::vector<double> terms(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        terms[i] = make_replicate_result(rows[i].interference, rows[i].desired_power, noise).capacity_term;
    }
    return terms;
}

Relation capacity_relation(CapacityEstimate const& l, CapacityEstimate const& r)
{
    double const band = l.half_width + r.half_width;
    if (l.mean + band < r.mean)
    {
        return Relation::left_smaller;
    }
    if (r.mean + band < l.mean)
    {
        return Relation::right_smaller;
    }
    return Relation::indistinguishable;
}

double analytic_lt(Scenario const& sc, std::string const& oracle, double s)
{
    double const lambda = std::get<Poisson>(sc.process).intensity;
    if (oracle == "ppp_singular")
    {
        double const alpha = sc.window.dimension / sc.pathloss.delta;
        // Singular gain r^{-δ}/b is the unit model with fading scaled by 1/b.
        double const moment = sc.interferer_fading.fractional_moment(alpha) * std::pow(sc.pathloss.b, -alpha);
        return ppp_singular_lt(lambda, sc.pathloss.delta, sc.window.dimension, moment)(s);
    }
    return ppp_interference_laplace(lambda, sc.interferer_fading, sc.pathloss, sc.window, s);
}

}  // namespace

//---------------------------------------------------------------------------//
std::string_view library_version()
{
    return STORD_VERSION;
}

bool ExperimentResult::expectations_met() const
{
    return std::all_of(outcomes.begin(), outcomes.end(), [](auto const& o) { return o.passed; });
}

ScenarioRun const& ExperimentResult::scenario(std::string_view label) const
{
    for (auto const& s : scenarios)
    {
        if (s.label == label)
        {
            return s;
        }
    }
    throw std::out_of_range("no scenario run labelled '" + std::string(label) + "'");
}

ComparisonOutcome const& ExperimentResult::outcome(std::string_view name) const
{
    for (auto const& o : outcomes)
    {
        if (o.name == name)
        {
            return o;
        }
    }
    throw std::out_of_range("no comparison named '" + std::string(name) + "'");
}

//---------------------------------------------------------------------------//
ExperimentResult run_experiment(ExperimentConfig const& cfg, RunContext const& ctx)
{
    cfg.validate();
    int const threads = ctx.threads > 0 ? ctx.threads : default_thread_count();
    auto const canonical = to_yaml(cfg);

    ExperimentResult result;
    result.config_sha256 = sha256_hex(canonical);
    result.output_dir = ctx.output_root / cfg.output_dir;
    if (ctx.write_files)
    {
        std::filesystem::create_directories(result.output_dir);
    }
    ArtifactWriter writer(result.output_dir, ctx.write_files);
    writer.write("config.yaml", canonical);

    // Scenario replicates.
    Json scenario_report = Json::array();
    for (std::size_t k = 0; k < cfg.scenarios.size(); ++k)
    {
        auto const& sc = cfg.scenarios[k];
        ScenarioRun run;
        run.label = sc.label;
        run.seed = cfg.coupling == Coupling::independent ? derive_seed(cfg.seed, k + 1) : cfg.seed;
        run.replicates = simulate_replicates(sc, cfg.n_replicates, run.seed, RunOptions{threads}, &run.stats);
        writer.write(sc.label + "_replicates.csv", replicates_csv(run.replicates));

        Json j;
        j["label"] = sc.label;
        j["process"] = process_label(sc.process);
        j["seed"] = run.seed;
        j["n"] = cfg.n_replicates;
        j["singular_redraws"] = run.stats.singular_redraws;
        auto const interference = interference_column(run.replicates);
        if (auto m = interference_mean(sc, interference))
        {
            j["interference_mean"] = m->mean;
            j["interference_standard_error"] = m->standard_error;
        }
        scenario_report.push_back(j);
        result.scenarios.push_back(std::move(run));
    }

    auto column = [&](std::string const& label, bool sir) {
        auto const& rows = result.scenario(label).replicates;
        return sir ? sir_column(rows) : interference_column(rows);
    };

    double const z = normal_quantile(1.0 - 0.5 * (1.0 - cfg.confidence));
    std::string capacity_table = "comparison,scenario,noise,mean,half_width,n\n";
    bool any_capacity = false;

    for (std::size_t ci = 0; ci < cfg.comparisons.size(); ++ci)
    {
        auto const& c = cfg.comparisons[ci];
        std::uint64_t const cmp_seed = derive_seed(cfg.seed, 1000 + ci);
        ComparisonOutcome out;
        out.name = c.name;
        out.kind = c.kind;
        out.left = c.left;
        out.right = c.right;
        out.expected = c.expect;
        Json details;

        switch (c.kind)
        {
            case ComparisonKind::interference_cdf:
            case ComparisonKind::sir_cdf: {
                bool const sir = c.kind == ComparisonKind::sir_cdf;
                auto const x = column(c.left, sir);
                auto const y = column(c.right, sir);
                auto const v = check_st_order(x, y, c.grid, cfg.confidence);
                out.relation = v.relation;
                details = verdict_json(v);
                writer.write(c.name + "_" + c.left + ".csv", curve_csv(as_cdf(v.left_curve), "x"));
                writer.write(c.name + "_" + c.right + ".csv", curve_csv(as_cdf(v.right_curve), "x"));
                break;
            }
            case ComparisonKind::lt_curve: {
                auto const x = column(c.left, false);
                auto const y = column(c.right, false);
                LtOrderOptions lt;
                lt.confidence = cfg.confidence;
                lt.n_bootstrap = cfg.n_bootstrap;
                lt.seed = cmp_seed;
                lt.paired = cfg.coupling == Coupling::common_random_numbers;
                lt.threads = threads;
                auto const v = check_lt_order(x, y, c.grid, lt);
                out.relation = v.relation;
                details = verdict_json(v);
                if (auto cond = binomial_condition(cfg.scenario(c.left), cfg.scenario(c.right), v.grid))
                {
                    details["binomial_condition"] = *cond;
                }
                writer.write(c.name + "_" + c.left + ".csv", curve_csv(v.left_curve, "s"));
                writer.write(c.name + "_" + c.right + ".csv", curve_csv(v.right_curve, "s"));
                break;
            }
            case ComparisonKind::capacity: {
                any_capacity = true;
                auto const& lrows = result.scenario(c.left).replicates;
                auto const& rrows = result.scenario(c.right).replicates;
                std::vector<Relation> rows;
                Json table = Json::array();
                for (double w : c.noise_levels)
                {
                    CapacityEstimate est[2];
                    int side = 0;
                    for (auto const* rep : {&lrows, &rrows})
                    {
                        auto const terms = capacity_terms(*rep, w);
                        auto const m = mean_and_standard_error(terms);
                        est[side] = {m.mean, z * m.standard_error, static_cast<std::int64_t>(terms.size())};
                        capacity_table += c.name + "," + (side == 0 ? c.left : c.right) + "," + format_double(w)
                                          + "," + format_double(m.mean) + "," + format_double(est[side].half_width)
                                          + "," + std::to_string(terms.size()) + "\n";
                        ++side;
                    }
                    auto const rel = capacity_relation(est[0], est[1]);
                    rows.push_back(rel);
                    Json row;
                    row["noise"] = w;
                    row["left_mean"] = number(est[0].mean);
                    row["left_half_width"] = number(est[0].half_width);
                    row["right_mean"] = number(est[1].mean);
                    row["right_half_width"] = number(est[1].half_width);
                    row["relation"] = std::string(to_string(rel));
                    table.push_back(row);
                }
                out.relation = aggregate_relations(rows);
                details["confidence"] = cfg.confidence;
                details["rows"] = table;
                break;
            }
            case ComparisonKind::lf_probe: {
                auto const& l = cfg.scenario(c.left);
                auto const& r = cfg.scenario(c.right);
                auto probe = LfProbe::default_probe(l.window.dimension);
                if (!c.grid.empty())
                {
                    probe.s_grid = c.grid;
                }
                LfOrderOptions lf;
                lf.confidence = cfg.confidence;
                lf.n_bootstrap = cfg.n_bootstrap;
                lf.threads = threads;
                auto const v = check_lf_order(l.process, r.process, probe, l.window, cfg.n_replicates, cmp_seed, lf);
                out.relation = v.aggregate.relation;
                details = verdict_json(v.aggregate);
                Json per = Json::array();
                for (std::size_t k = 0; k < v.per_function.size(); ++k)
                {
                    Json f = verdict_json(v.per_function[k]);
                    f["function"] = v.function_names[k];
                    per.push_back(f);
                    writer.write(c.name + "_" + v.function_names[k] + "_" + c.left + ".csv",
                                 curve_csv(v.per_function[k].left_curve, "s"));
                    writer.write(c.name + "_" + v.function_names[k] + "_" + c.right + ".csv",
                                 curve_csv(v.per_function[k].right_curve, "s"));
                }
                details["functions"] = per;
                if (v.binomial_condition)
                {
                    details["binomial_condition"] = {{"value", *v.binomial_condition},
                                                     {"count", *v.binomial_count},
                                                     {"holds", *v.binomial_condition <= *v.binomial_count}};
                }
                break;
            }
            case ComparisonKind::lt_oracle: {
                auto const& sc = cfg.scenario(c.left);
                auto const x = column(c.left, false);
                auto const boot = bootstrap_laplace(x, c.s_values, cfg.n_bootstrap, cmp_seed, threads);
                EmpiricalCurve curve;
                curve.n_replicates = static_cast<std::int64_t>(x.size());
                Json rows = Json::array();
                bool ok = true;
                for (std::size_t j = 0; j < c.s_values.size(); ++j)
                {
                    double const s = c.s_values[j];
                    double const sigma = boot.standard_error(j);
                    double const reference = analytic_lt(sc, c.oracle, s);
                    double const deviation = boot.estimate[j] - reference;
                    bool const within = std::abs(deviation) <= c.tolerance * sigma;
                    ok = ok && within;
                    curve.abscissae.push_back(s);
                    curve.values.push_back(boot.estimate[j]);
                    curve.half_widths.push_back(
                        0.5 * (boot.percentile(j, 1.0 - 0.5 * (1.0 - cfg.confidence)) - boot.percentile(j, 0.5 * (1.0 - cfg.confidence))));
                    Json row;
                    row["s"] = s;
                    row["empirical"] = boot.estimate[j];
                    row["reference"] = reference;
                    row["bootstrap_sigma"] = sigma;
                    row["sigmas"] = sigma > 0 ? number(deviation / sigma) : number(deviation == 0 ? 0.0 : infinity);
                    row["within"] = within;
                    rows.push_back(row);
                }
                out.passed = ok;
                details["oracle"] = c.oracle;
                details["tolerance_sigmas"] = c.tolerance;
                details["bootstrap_seed"] = cmp_seed;
                details["rows"] = rows;
                writer.write(c.name + ".csv", curve_csv(curve, "s"));
                break;
            }
            case ComparisonKind::mean_oracle: {
                auto const& sc = cfg.scenario(c.left);
                auto const x = column(c.left, false);
                auto const m = mean_and_standard_error(x);
                double const lambda = mean_intensity(sc.process, sc.window);
                double const reference = c.oracle == "campbell_window"
                                             ? campbell_mean(lambda, sc.interferer_fading.mean(), sc.pathloss, sc.window)
                                             : campbell_mean(lambda, sc.interferer_fading.mean(), sc.pathloss);
                double const rel = std::abs(m.mean - reference) / reference;
                out.passed = rel <= c.tolerance;
                details["oracle"] = c.oracle;
                details["mean"] = m.mean;
                details["standard_error"] = m.standard_error;
                details["reference"] = reference;
                details["relative_error"] = rel;
                details["tolerance"] = c.tolerance;
                break;
            }
            case ComparisonKind::mean_equal: {
                auto const a = mean_and_standard_error(column(c.left, false));
                auto const b = mean_and_standard_error(column(c.right, false));
                double const combined = std::hypot(a.standard_error, b.standard_error);
                double const sigmas = combined > 0 ? std::abs(a.mean - b.mean) / combined : 0.0;
                out.passed = sigmas <= c.tolerance;
                details["left_mean"] = a.mean;
                details["left_standard_error"] = a.standard_error;
                details["right_mean"] = b.mean;
                details["right_standard_error"] = b.standard_error;
                details["sigmas"] = sigmas;
                details["tolerance_sigmas"] = c.tolerance;
                break;
            }
        }
        if (out.expected)
        {
            out.passed = out.relation && *out.relation == *out.expected;
        }
        out.details = std::move(details);
        result.outcomes.push_back(std::move(out));
    }
    if (any_capacity)
    {
        writer.write("capacity.csv", capacity_table);
    }

    Json report;
    report["experiment"] = cfg.name;
    report["config_sha256"] = result.config_sha256;
    report["seed"] = cfg.seed;
    report["n_replicates"] = cfg.n_replicates;
    report["coupling"] = std::string(to_string(cfg.coupling));
    report["scenarios"] = scenario_report;
    Json comparisons = Json::array();
    for (auto const& o : result.outcomes)
    {
        Json j;
        j["name"] = o.name;
        j["kind"] = std::string(to_string(o.kind));
        j["left"] = o.left;
        if (!o.right.empty())
        {
            j["right"] = o.right;
        }
        if (o.relation)
        {
            j["relation"] = std::string(to_string(*o.relation));
        }
        if (o.expected)
        {
            j["expected"] = std::string(to_string(*o.expected));
        }
        j["passed"] = o.passed;
        j["details"] = o.details;
        comparisons.push_back(j);
    }
    report["comparisons"] = comparisons;
    report["all_expectations_met"] = result.expectations_met();
    writer.write("verdicts.json", report.dump(2) + "\n");

    auto files = writer.files();
    std::sort(files.begin(), files.end());
    Json manifest;
    manifest["experiment"] = cfg.name;
    manifest["config_sha256"] = result.config_sha256;
    manifest["seed"] = cfg.seed;
    manifest["library_version"] = std::string(library_version());
    Json listing = Json::array();
    for (auto const& [name, hash, bytes] : files)
    {
        listing.push_back({{"path", name}, {"sha256", hash}, {"bytes", bytes}});
        result.files.push_back(name);
    }
    manifest["files"] = listing;
    writer.write("manifest.json", manifest.dump(2) + "\n");
    result.files.push_back("manifest.json");
    std::sort(result.files.begin(), result.files.end());
    return result;
}

}  // namespace stord
