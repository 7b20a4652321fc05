#ifndef LAPX_EXPERIMENTS_HPP_
#define LAPX_EXPERIMENTS_HPP_

#include "lapx/config.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lapx {

/// Rows of already formatted cells.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  /// Throws std::logic_error if the row width does not match columns.
  void add(std::vector<std::string> row);
  std::string to_csv() const;
};

/// Shortest text that round-trips ("%.17g"); inf, -inf and nan spelled out.
std::string format_number(double x);
std::string format_number(long x);
std::string format_number(std::size_t x);

struct ExperimentInfo {
  std::string name;
  std::string section;  // parameter block read by the experiment
  std::string summary;
};

const std::vector<ExperimentInfo>& list_experiments();

/// Everything needed to run: the validated, defaulted parameters.
struct ResolvedExperiment {
  std::string experiment;
  std::uint64_t seed = 0;
  std::string output;       // CSV path
  nlohmann::json params;    // the experiment's section, defaults filled in
  std::string hash;         // config_hash over experiment, seed and params

  nlohmann::json sidecar(std::size_t n_rows, const std::vector<std::string>& columns) const;
};

struct ValidationResult {
  std::optional<ResolvedExperiment> resolved;  // set only when errors is empty
  std::vector<std::string> errors;
};

/// Parses and checks every field without running anything. All problems
/// are reported together.
ValidationResult validate_config(const ConfigFile& file);
ValidationResult validate_config_file(const std::string& path);

/// Runs the experiment; the first two columns are seed and config_hash.
/// Runtime degeneracies appear as flagged rows rather than exceptions.
Table run_experiment(const ResolvedExperiment& exp);

/// "<stem>.json" next to the CSV.
std::string sidecar_path(const std::string& csv_path);

/// Writes the CSV and its JSON sidecar, creating parent directories.
void write_outputs(const ResolvedExperiment& exp, const Table& table);

}  // namespace lapx

#endif  // LAPX_EXPERIMENTS_HPP_
