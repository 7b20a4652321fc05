#include "registry.hpp"

#include "lapx/core.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace lapx {

void Table::add(std::vector<std::string> row) {
  if (row.size() != columns.size())
    throw std::logic_error("table row has " + std::to_string(row.size()) + " cells, expected " +
                           std::to_string(columns.size()));
  rows.push_back(std::move(row));
}

std::string Table::to_csv() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(columns);
  for (const auto& r : rows) line(r);
  return out;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_number(long x) { return std::to_string(x); }
std::string format_number(std::size_t x) { return std::to_string(x); }

namespace detail {

void require_positive(Params& p, const std::string& key, double value) {
  if (!(value > 0.0)) p.fail(key, "must be positive");
}

void require_positive(Params& p, const std::string& key, const std::vector<double>& values) {
  for (double v : values)
    if (!(v > 0.0)) {
      p.fail(key, "every entry must be positive");
      return;
    }
}

void require_at_least(Params& p, const std::string& key, long value, long min) {
  if (value < min) p.fail(key, "must be at least " + std::to_string(min));
}

void require_at_least(Params& p, const std::string& key, const std::vector<long>& values, long min) {
  for (long v : values)
    if (v < min) {
      p.fail(key, "every entry must be at least " + std::to_string(min));
      return;
    }
}

void require_nonempty(Params& p, const std::string& key, std::size_t size) {
  if (size == 0) p.fail(key, "must not be empty");
}

std::vector<std::size_t> to_sizes(const std::vector<long>& values) {
  std::vector<std::size_t> out;
  for (long v : values) out.push_back(static_cast<std::size_t>(v));
  return out;
}

std::vector<std::size_t> json_sizes(const nlohmann::json& j) {
  std::vector<std::size_t> out;
  for (const auto& v : j) out.push_back(v.get<std::size_t>());
  return out;
}

const std::vector<ExperimentDef>& registry() {
  static const std::vector<ExperimentDef> defs{hj_sweep_def(),        prox_point_grid_def(),
                                               rgf_compare_def(),     bpgd_compare_def(),
                                               oracle_convergence_def(), projection_demo_def()};
  return defs;
}

}  // namespace detail

const std::vector<ExperimentInfo>& list_experiments() {
  static const std::vector<ExperimentInfo> infos = [] {
    std::vector<ExperimentInfo> out;
    for (const auto& d : detail::registry()) out.push_back(d.info);
    return out;
  }();
  return infos;
}

namespace {

const detail::ExperimentDef* find_def(const std::string& name) {
  for (const auto& d : detail::registry())
    if (d.info.name == name) return &d;
  return nullptr;
}

}  // namespace

nlohmann::json ResolvedExperiment::sidecar(std::size_t n_rows,
                                           const std::vector<std::string>& columns) const {
  nlohmann::json j;
  j["experiment"] = experiment;
  j["seed"] = seed;
  j["output"] = output;
  j["config_hash"] = hash;
  j["config"] = params;
  j["columns"] = columns;
  j["rows"] = n_rows;
  return j;
}

ValidationResult validate_config(const ConfigFile& file) {
  ValidationResult result;
  result.errors = file.parse_errors();
  if (!result.errors.empty()) return result;

  nlohmann::json resolved = nlohmann::json::object();
  Params run(file, "run", resolved, result.errors);
  const std::string name = run.text("experiment", "");
  const long seed = run.integer("seed", 0);
  const std::string output = run.text("output", name.empty() ? "out.csv" : "results/" + name + ".csv");
  run.reject_unknown_keys();
  if (seed < 0) run.fail("seed", "must be nonnegative");

  const detail::ExperimentDef* def = find_def(name);
  if (name.empty()) {
    run.fail("experiment", "missing; use list-experiments to see the choices");
  } else if (!def) {
    run.fail("experiment", "unknown experiment '" + name + "'");
  }

  for (const auto& section : file.sections())
    if (section != "run" && (!def || section != def->info.section))
      result.errors.push_back(section + ": section not used by experiment '" + name + "'");

  if (!def) return result;

  nlohmann::json params_root = nlohmann::json::object();
  Params params(file, def->info.section, params_root, result.errors);
  try {
    def->resolve(params, static_cast<std::uint64_t>(seed));
  } catch (const std::exception& e) {
    result.errors.push_back(def->info.section + ": " + e.what());
  }
  params.reject_unknown_keys();
  if (!result.errors.empty()) return result;

  ResolvedExperiment exp;
  exp.experiment = name;
  exp.seed = static_cast<std::uint64_t>(seed);
  exp.output = output;
  exp.params = params_root[def->info.section];
  nlohmann::json hashed;
  hashed["experiment"] = name;
  hashed["seed"] = exp.seed;
  hashed["params"] = exp.params;
  exp.hash = config_hash(hashed);
  result.resolved = std::move(exp);
  return result;
}

ValidationResult validate_config_file(const std::string& path) {
  return validate_config(ConfigFile::load(path));
}

Table run_experiment(const ResolvedExperiment& exp) {
  const detail::ExperimentDef* def = find_def(exp.experiment);
  if (!def) throw ConfigError("unknown experiment '" + exp.experiment + "'");
  Table body = def->run(exp.params, exp.seed);
  Table out;
  out.columns = {"seed", "config_hash"};
  out.columns.insert(out.columns.end(), body.columns.begin(), body.columns.end());
  const std::string seed = std::to_string(exp.seed);
  for (auto& row : body.rows) {
    std::vector<std::string> full{seed, exp.hash};
    full.insert(full.end(), std::make_move_iterator(row.begin()), std::make_move_iterator(row.end()));
    out.add(std::move(full));
  }
  return out;
}

std::string sidecar_path(const std::string& csv_path) {
  std::filesystem::path p(csv_path);
  p.replace_extension(".json");
  return p.string();
}

void write_outputs(const ResolvedExperiment& exp, const Table& table) {
  const std::filesystem::path csv(exp.output);
  if (csv.has_parent_path()) std::filesystem::create_directories(csv.parent_path());
  {
    std::ofstream out(csv, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + exp.output);
    out << table.to_csv();
  }
  std::ofstream side(sidecar_path(exp.output), std::ios::binary);
  if (!side) throw std::runtime_error("cannot write " + sidecar_path(exp.output));
  side << exp.sidecar(table.rows.size(), table.columns).dump(2) << '\n';
}

}  // namespace lapx
