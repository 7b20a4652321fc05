#ifndef LAPX_EXPERIMENTS_REGISTRY_HPP_
#define LAPX_EXPERIMENTS_REGISTRY_HPP_

#include "lapx/experiments.hpp"

#include <functional>

namespace lapx::detail {

struct ExperimentDef {
  ExperimentInfo info;
  /// Reads the parameter block through p (which records defaults and
  /// errors) and runs any cross-field checks.
  std::function<void(Params& p, std::uint64_t seed)> resolve;
  /// Produces the table without the seed and config_hash columns.
  std::function<Table(const nlohmann::json& params, std::uint64_t seed)> run;
};

ExperimentDef hj_sweep_def();
ExperimentDef prox_point_grid_def();
ExperimentDef rgf_compare_def();
ExperimentDef bpgd_compare_def();
ExperimentDef oracle_convergence_def();
ExperimentDef projection_demo_def();

const std::vector<ExperimentDef>& registry();

// Parameter helpers shared by the experiment definitions.
void require_positive(Params& p, const std::string& key, double value);
void require_positive(Params& p, const std::string& key, const std::vector<double>& values);
void require_at_least(Params& p, const std::string& key, long value, long min);
void require_at_least(Params& p, const std::string& key, const std::vector<long>& values, long min);
void require_nonempty(Params& p, const std::string& key, std::size_t size);

std::vector<std::size_t> to_sizes(const std::vector<long>& values);
std::vector<std::size_t> json_sizes(const nlohmann::json& j);

}  // namespace lapx::detail

#endif  // LAPX_EXPERIMENTS_REGISTRY_HPP_
