// Command-line driver: run, list, export-config, validate, dump-pattern.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "stord/experiment.hpp"

namespace
{
using namespace stord;

ExperimentConfig resolve(std::string const& target)
{
    if (is_builtin(target) && !std::filesystem::exists(target))
    {
        return builtin_config(target);
    }
    return load_config(target);
}

void print_summary(ExperimentResult const& result)
{
    for (auto const& o : result.outcomes)
    {
        std::cout << (o.passed ? "ok   " : "FAIL ") << o.name << " [" << to_string(o.kind) << "]";
        if (o.relation)
        {
            std::cout << " relation=" << to_string(*o.relation);
        }
        if (o.expected)
        {
            std::cout << " expected=" << to_string(*o.expected);
        }
        std::cout << "\n";
    }
    std::cout << "wrote " << result.files.size() << " files to " << result.output_dir.string() << "\n";
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Interference simulation and stochastic-order checks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(library_version()));

    std::string target;
    int threads = 0;
    bool serial = false;
    std::int64_t replicates = 0;
    std::string output_root;
    std::uint64_t seed_override = 0;
    bool quiet = false;

    auto* run = app.add_subcommand("run", "Run a config file or builtin experiment");
    run->add_option("target", target, "Config path or builtin name")->required();
    run->add_option("-j,--threads", threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    run->add_flag("--serial", serial, "Force one thread");
    run->add_option("-n,--replicates", replicates, "Override n_replicates")->check(CLI::PositiveNumber);
    run->add_option("--seed", seed_override, "Override the master seed");
    run->add_option("-o,--output-root", output_root, "Output root (default: $STORD_OUTPUT_ROOT or ./stord-output)");
    run->add_flag("-q,--quiet", quiet, "Only report failures");

    auto* list = app.add_subcommand("list", "List builtin experiments");

    std::string builtin_name;
    auto* exporter = app.add_subcommand("export-config", "Print a builtin's canonical config");
    exporter->add_option("builtin", builtin_name, "Builtin name")->required();

    std::string config_path;
    auto* validate = app.add_subcommand("validate", "Parse and validate a config file");
    validate->add_option("config", config_path, "Config path")->required()->check(CLI::ExistingFile);

    std::string dump_target;
    std::string dump_label;
    std::uint64_t dump_seed = 1;
    auto* dump = app.add_subcommand("dump-pattern", "Write one sampled point pattern as CSV to stdout");
    dump->add_option("target", dump_target, "Config path or builtin name")->required();
    dump->add_option("scenario", dump_label, "Scenario label")->required();
    dump->add_option("--seed", dump_seed, "Pattern seed");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*list)
        {
            for (auto const& name : list_builtins())
            {
                std::cout << name << "  " << builtin_config(name).description << "\n";
            }
            return 0;
        }
        if (*exporter)
        {
            std::cout << to_yaml(builtin_config(builtin_name));
            return 0;
        }
        if (*validate)
        {
            auto const cfg = load_config(config_path);
            std::cout << cfg.name << ": valid (" << cfg.scenarios.size() << " scenarios, " << cfg.comparisons.size()
                      << " comparisons, sha256 " << config_hash(cfg) << ")\n";
            return 0;
        }
        if (*dump)
        {
            auto const cfg = resolve(dump_target);
            auto const& sc = cfg.scenario(dump_label);
            auto rng = make_stream(dump_seed, 0, StreamPurpose::pattern);
            write_pattern_csv(std::cout, sample(sc.process, sc.window, rng), dump_seed);
            return 0;
        }

        auto cfg = resolve(target);
        if (replicates > 0)
        {
            cfg.n_replicates = replicates;
        }
        if (run->count("--seed") > 0)
        {
            cfg.seed = seed_override;
        }
        RunContext ctx;
        if (!output_root.empty())
        {
            ctx.output_root = output_root;
        }
        else if (char const* env = std::getenv("STORD_OUTPUT_ROOT"); env && *env)
        {
            ctx.output_root = env;
        }
        ctx.threads = serial ? 1 : threads;
        auto const result = run_experiment(cfg, ctx);
        if (!quiet || !result.expectations_met())
        {
            print_summary(result);
        }
        return result.expectations_met() ? 0 : 2;
    }
    catch (ConfigError const& e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
    catch (std::exception const& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
