#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "engine.hpp"
#include "ordering.hpp"

namespace stord
{
//---------------------------------------------------------------------------//
enum class ComparisonKind
{
    interference_cdf,
    sir_cdf,
    lt_curve,
    capacity,
    lf_probe,
    lt_oracle,
    mean_oracle,
    mean_equal,
};

std::string_view to_string(ComparisonKind kind);
ComparisonKind comparison_kind_from_string(std::string_view text);

//! Whether the kind compares two scenarios (needs a right-hand label).
bool is_paired(ComparisonKind kind);

enum class Coupling
{
    independent,
    common_random_numbers,
};

std::string_view to_string(Coupling c);

//---------------------------------------------------------------------------//
/*!
 * One declared check between scenarios (or of one scenario against theory).
 *
 * Fields that do not apply to the kind are left at their defaults and are
 * rejected by the parser when present.
 */
struct Comparison
{
    ComparisonKind kind = ComparisonKind::lt_curve;
    std::string name;
    std::string left;
    std::string right;
    std::optional<Relation> expect;
    //! x grid (cdf kinds) or s grid (lt_curve, lf_probe); empty selects the default.
    std::vector<double> grid;
    //! Table rows for capacity comparisons.
    std::vector<double> noise_levels;
    //! s values for lt_oracle.
    std::vector<double> s_values;
    //! σ multiplier (lt_oracle, mean_equal) or relative tolerance (mean_oracle).
    double tolerance = 0;
    //! lt_oracle: ppp_singular | ppp_window; mean_oracle: campbell_infinite | campbell_window.
    std::string oracle;
};

struct ExperimentConfig
{
    std::string name;
    std::string description;
    std::vector<Scenario> scenarios;
    std::vector<Comparison> comparisons;
    std::int64_t n_replicates = 100000;
    std::uint64_t seed = 1;
    std::string output_dir;  //!< relative to the output root; defaults to name
    Coupling coupling = Coupling::independent;
    double confidence = 0.95;
    int n_bootstrap = 500;

    //! Throws ConfigError on inconsistent content (unknown labels, small n, ...).
    void validate() const;

    Scenario const& scenario(std::string_view label) const;
    std::size_t scenario_index(std::string_view label) const;
};

//---------------------------------------------------------------------------//
//! Parse or validation failure, located in the source text when possible.
class ConfigError : public std::runtime_error
{
  public:
    ConfigError(std::string message, std::string field = {}, int line = 0, int column = 0, std::string source = {});

    //! The bare message without location prefix.
    std::string const& message() const { return message_; }
    std::string const& field() const { return field_; }
    //! 1-based; 0 when unknown.
    int line() const { return line_; }
    int column() const { return column_; }

  private:
    std::string message_;
    std::string field_;
    int line_;
    int column_;
};

ExperimentConfig parse_config(std::string_view text, std::string const& source_name = "<config>");
ExperimentConfig load_config(std::filesystem::path const& path);

//! Canonical YAML: every field written, defaults filled, shortest round-trip numbers.
std::string to_yaml(ExperimentConfig const& cfg);

//! SHA-256 (hex) of the canonical YAML.
std::string config_hash(ExperimentConfig const& cfg);

//! SHA-256 hex digest of bytes.
std::string sha256_hex(std::string_view bytes);

}  // namespace stord
