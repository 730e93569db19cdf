#pragma once

#include "bose/fock_oracle.hpp"
#include "bose/pipeline.hpp"
#include "bose/potential.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bose {

const char* tool_version();

/// Parsed JSON run configuration. Sections are optional at parse time; each
/// command asks for the ones it needs through require().
struct RunConfig {
  std::optional<PotentialSpec> potential;
  double L = 0.0;                    // lattice.L; 0 selects the healing-length default
  double p_cut = 0.0;                // lattice.p_cut; 0 selects the table range
  std::vector<double> rho;           // physics.rho, strictly increasing
  int born_order = 3;                // physics.born_order
  std::vector<double> lambda_scan;   // physics.lambda_scan for the depletion exponent
  std::string out_dir = "out";
  std::string format = "csv";
  std::map<std::string, double> tolerances;
  fock::OracleConfig oracle;
  std::vector<double> phi_h;         // phi_table.h
  std::vector<std::string> sections; // present top-level keys
  std::string canonical;             // normalized JSON used for the hash

  bool has(const std::string& section) const;
  /// ConfigError naming the missing section.
  void require(const std::string& section, const std::string& command) const;
  double tolerance(const std::string& name) const;
  EnergyOptions energy_options() const;
};

/// Tolerance names and their defaults.
const std::map<std::string, double>& default_tolerances();

/// Throws ConfigError with a diagnostic on malformed JSON, unknown keys,
/// wrong types or invalid values.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// BOSE_TOL_<NAME> (upper case) overrides tolerance NAME.
void apply_env_overrides(RunConfig& config);

/// FNV-1a 64 of the canonical configuration, as 16 hex digits.
std::string config_hash(const RunConfig& config);

/// Rows of numbers (or short strings) with metadata lines on top.
struct Table {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_meta(const std::string& key, const std::string& value) { meta.emplace_back(key, value); }
  void add_meta(const std::string& key, double value);
};

/// Shortest round-trip decimal form; "inf", "-inf", "nan" for non-finite.
std::string format_number(double x);

/// '#'-prefixed "key: value" lines, then a header row and the data.
std::string render_csv(const Table& table);
/// JSON object {"meta": {...}, "columns": [...], "rows": [{column: value}]}.
std::string render_doc(const Table& table);

/// Writes to a temporary file in the same directory, then renames.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace bose
