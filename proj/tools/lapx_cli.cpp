#include "lapx/experiments.hpp"
#include "lapx/parallel.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

int report_errors(const std::vector<std::string>& errors) {
  for (const auto& e : errors) std::cerr << "error: " << e << '\n';
  std::cerr << errors.size() << (errors.size() == 1 ? " error" : " errors") << '\n';
  return 1;
}

int cmd_validate(const std::string& path) {
  const auto result = lapx::validate_config_file(path);
  if (!result.errors.empty()) return report_errors(result.errors);
  const auto& exp = *result.resolved;
  std::cout << "ok: " << exp.experiment << " seed=" << exp.seed << " config_hash=" << exp.hash
            << " output=" << exp.output << '\n';
  return 0;
}

int cmd_run(const std::string& path) {
  const auto result = lapx::validate_config_file(path);
  if (!result.errors.empty()) return report_errors(result.errors);
  const auto& exp = *result.resolved;
  std::cerr << "running " << exp.experiment << " (seed " << exp.seed << ", " << lapx::num_threads()
            << " threads)\n";
  const lapx::Table table = lapx::run_experiment(exp);
  lapx::write_outputs(exp, table);
  std::cout << "wrote " << table.rows.size() << " rows to " << exp.output << " and "
            << lapx::sidecar_path(exp.output) << '\n';
  return 0;
}

int cmd_list() {
  for (const auto& e : lapx::list_experiments())
    std::cout << e.name << "  [" << e.section << "]  " << e.summary << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laplace approximation experiments. Set LAPX_NUM_THREADS to override the worker count."};
  app.require_subcommand(1);

  std::string run_path, validate_path;
  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", run_path, "Config file")->required();
  auto* validate = app.add_subcommand("validate", "Check a config file without running it");
  validate->add_option("config", validate_path, "Config file")->required();
  auto* list = app.add_subcommand("list-experiments", "List the available experiments");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(run_path);
    if (*validate) return cmd_validate(validate_path);
    if (*list) return cmd_list();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
