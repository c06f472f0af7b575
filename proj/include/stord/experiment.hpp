#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "config.hpp"

namespace stord
{
//! Library version written into manifests.
std::string_view library_version();

struct ScenarioRun
{
    std::string label;
    std::uint64_t seed = 0;
    std::vector<ReplicateResult> replicates;
    SimulationStats stats;
};

struct ComparisonOutcome
{
    std::string name;
    ComparisonKind kind = ComparisonKind::lt_curve;
    std::string left;
    std::string right;
    //! Measured relation for ordering kinds.
    std::optional<Relation> relation;
    std::optional<Relation> expected;
    //! Expectation met; oracle and equality kinds are always judged.
    bool passed = true;
    nlohmann::ordered_json details;
};

struct ExperimentResult
{
    std::string config_sha256;
    std::filesystem::path output_dir;
    std::vector<ScenarioRun> scenarios;
    std::vector<ComparisonOutcome> outcomes;
    //! Written files relative to output_dir, sorted.
    std::vector<std::string> files;

    bool expectations_met() const;
    ScenarioRun const& scenario(std::string_view label) const;
    ComparisonOutcome const& outcome(std::string_view name) const;
};

struct RunContext
{
    std::filesystem::path output_root = "stord-output";
    //! 0 = all hardware threads; 1 = serial.
    int threads = 0;
    bool write_files = true;
};

//---------------------------------------------------------------------------//
/*!
 * Simulate every scenario, evaluate every comparison, write artifacts.
 *
 * Scenario k runs with seed derive_seed(cfg.seed, k + 1) under independent
 * coupling and with cfg.seed itself under common random numbers. Output bytes
 * depend only on the config, never on the thread count.
 */
ExperimentResult run_experiment(ExperimentConfig const& cfg, RunContext const& ctx = {});

//---------------------------------------------------------------------------//
std::vector<std::string> list_builtins();
//! Throws std::invalid_argument for unknown names.
ExperimentConfig builtin_config(std::string_view name);
bool is_builtin(std::string_view name);

}  // namespace stord
