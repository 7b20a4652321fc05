#include "registry.hpp"

#include "lapx/benchmarks.hpp"
#include "lapx/optimizers.hpp"

#include <cmath>

namespace lapx::detail {

namespace {

const std::vector<double> kLppDeltas{1e-4, 1e-3, 1e-2, 1e-1, 1.0};
const std::vector<double> kStepSizes{1e-7, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1};
const std::vector<double> kGradientNoise{0.0, 1e-2, 1e-1, 1.0};

std::vector<std::string> all_benchmark_names() {
  std::vector<std::string> out;
  for (Benchmark b : all_benchmarks()) out.push_back(benchmark_name(b));
  return out;
}

std::string status_name(TraceStatus s) {
  switch (s) {
    case TraceStatus::kCompleted: return "completed";
    case TraceStatus::kDegenerate: return "degenerate";
    case TraceStatus::kDiverged: return "diverged";
    case TraceStatus::kStepSize: return "step_size";
  }
  return "unknown";
}

void resolve_benchmarks(Params& p) {
  const auto names = p.texts("benchmarks", all_benchmark_names());
  require_nonempty(p, "benchmarks", names.size());
  for (const auto& n : names) {
    try {
      parse_benchmark(n);
    } catch (const ConfigError& e) {
      p.fail("benchmarks", e.what());
    }
  }
  require_at_least(p, "dim", p.integer("dim", 10), 2);
  p.real("x0", 4.0);
  require_positive(p, "lambda", p.real("lambda", 1.0));
  require_at_least(p, "reps", p.integer("reps", 3), 1);
}

void resolve_gd_grid(Params& p) {
  const auto etas = p.reals("gd_etas", kStepSizes);
  require_nonempty(p, "gd_etas", etas.size());
  require_positive(p, "gd_etas", etas);
  const auto sds = p.reals("gd_noise_sds", kGradientNoise);
  require_nonempty(p, "gd_noise_sds", sds.size());
  for (double s : sds)
    if (!(s >= 0.0)) {
      p.fail("gd_noise_sds", "entries must be nonnegative");
      break;
    }
}

OptConfig base_config(const nlohmann::json& j, int dim) {
  OptConfig cfg;
  cfg.lambda = j["lambda"].get<double>();
  cfg.x0 = Vector::Constant(dim, j["x0"].get<double>());
  return cfg;
}

GradientFn gradient_of(const BenchmarkFn& fn) {
  return [fn](VectorRef x) { return fn.gradient(x); };
}

TuneResult tune_gd(const BenchmarkFn& fn, const OptConfig& base, const nlohmann::json& j,
                   std::size_t iters, std::size_t reps, const RngStream& rng) {
  TuneGrid grid;
  grid.etas = j["gd_etas"].get<std::vector<double>>();
  grid.noise_sds = j["gd_noise_sds"].get<std::vector<double>>();
  return tune_grid(Algorithm::kGd, fn.objective(), base, grid, iters, rng, reps, gradient_of(fn));
}

// -- prox_point_grid ------------------------------------------------------

void resolve_grid(Params& p, std::uint64_t) {
  resolve_benchmarks(p);
  const auto deltas = p.reals("deltas", kLppDeltas);
  require_nonempty(p, "deltas", deltas.size());
  require_positive(p, "deltas", deltas);
  const auto ns = p.integers("n_samples", {10, 100, 1000, 10000});
  require_nonempty(p, "n_samples", ns.size());
  require_at_least(p, "n_samples", ns, 1);
  require_at_least(p, "iters", p.integer("iters", 500), 1);
  p.flag("gd_reference", false);
  require_at_least(p, "gd_iters", p.integer("gd_iters", 10000), 1);
  resolve_gd_grid(p);
}

Table run_grid(const nlohmann::json& j, std::uint64_t seed) {
  Table t;
  t.columns = {"benchmark", "algorithm", "delta", "N",     "eta",
               "noise_sd",  "iteration", "value", "evals", "status"};
  const int dim = j["dim"].get<int>();
  const auto iters = j["iters"].get<std::size_t>();
  const auto reps = j["reps"].get<std::size_t>();
  const auto names = j["benchmarks"].get<std::vector<std::string>>();
  for (std::size_t b = 0; b < names.size(); ++b) {
    const BenchmarkFn fn = benchmark(names[b], dim);
    const ObjectiveFn f = fn.objective();
    // every (delta, N) cell of one benchmark shares the same streams
    const RngStream rng = RngStream(seed, 2).child(b);
    OptConfig cfg = base_config(j, dim);
    cfg.max_iters = iters;
    for (std::size_t n : json_sizes(j["n_samples"])) {
      for (double delta : j["deltas"].get<std::vector<double>>()) {
        cfg.n_samples = n;
        cfg.delta = delta;
        const OptTrace avg = average_traces(run_repeated(Algorithm::kLpp, f, cfg, reps, rng));
        const std::string status = status_name(avg.status);
        for (std::size_t k = 1; k <= iters; ++k) {
          const double value = k < avg.size() ? avg.values[k] : kInf;
          const std::uint64_t evals = k < avg.size() ? avg.evals[k] : avg.evals.back();
          t.add({names[b], "lpp", format_number(delta), format_number(n), "", "", format_number(k),
                 format_number(value), format_number(static_cast<std::size_t>(evals)), status});
        }
      }
    }
    if (j["gd_reference"].get<bool>()) {
      const auto gd_iters = j["gd_iters"].get<std::size_t>();
      const TuneResult best = tune_gd(fn, base_config(j, dim), j, gd_iters, reps, RngStream(seed, 3).child(b));
      t.add({names[b], "gd", "", "", format_number(best.best_config.eta),
             format_number(best.best_config.noise_sd), format_number(gd_iters),
             format_number(best.best.selection_value()), format_number(gd_iters),
             status_name(best.best.status)});
    }
  }
  return t;
}

// -- rgf_compare -----------------------------------------------------------

void resolve_compare(Params& p, std::uint64_t) {
  resolve_benchmarks(p);
  require_at_least(p, "n_samples", p.integer("n_samples", 1000), 1);
  require_at_least(p, "iters", p.integer("iters", 1000), 1);
  const auto lpp = p.reals("lpp_deltas", kLppDeltas);
  require_nonempty(p, "lpp_deltas", lpp.size());
  require_positive(p, "lpp_deltas", lpp);
  const auto rgf = p.reals("rgf_deltas", kLppDeltas);
  require_nonempty(p, "rgf_deltas", rgf.size());
  require_positive(p, "rgf_deltas", rgf);
  const auto etas = p.reals("rgf_etas", kStepSizes);
  require_nonempty(p, "rgf_etas", etas.size());
  require_positive(p, "rgf_etas", etas);
  resolve_gd_grid(p);
}

Table run_compare(const nlohmann::json& j, std::uint64_t seed) {
  Table t;
  t.columns = {"benchmark", "algorithm", "delta", "N",     "eta",
               "noise_sd",  "iteration", "value", "evals", "status"};
  const int dim = j["dim"].get<int>();
  const auto iters = j["iters"].get<std::size_t>();
  const auto reps = j["reps"].get<std::size_t>();
  const auto n = j["n_samples"].get<std::size_t>();
  const auto names = j["benchmarks"].get<std::vector<std::string>>();

  auto emit = [&](const std::string& bench, const std::string& algo, const std::string& delta,
                  const std::string& n_text, const std::string& eta, const std::string& sd,
                  const OptTrace& avg) {
    const std::string status = status_name(avg.status);
    for (std::size_t k = 1; k <= iters; ++k) {
      const double value = k < avg.size() ? avg.values[k] : kInf;
      const std::uint64_t evals = k < avg.size() ? avg.evals[k] : avg.evals.back();
      t.add({bench, algo, delta, n_text, eta, sd, format_number(k), format_number(value),
             format_number(static_cast<std::size_t>(evals)), status});
    }
  };

  for (std::size_t b = 0; b < names.size(); ++b) {
    const BenchmarkFn fn = benchmark(names[b], dim);
    const ObjectiveFn f = fn.objective();
    OptConfig base = base_config(j, dim);
    base.n_samples = n;

    TuneGrid lpp_grid;
    lpp_grid.deltas = j["lpp_deltas"].get<std::vector<double>>();
    const TuneResult lpp =
        tune_grid(Algorithm::kLpp, f, base, lpp_grid, iters, RngStream(seed, 4).child(b), reps);
    emit(names[b], "lpp", format_number(lpp.best_config.delta), format_number(n), "", "", lpp.best);

    TuneGrid rgf_grid;
    rgf_grid.deltas = j["rgf_deltas"].get<std::vector<double>>();
    rgf_grid.etas = j["rgf_etas"].get<std::vector<double>>();
    const TuneResult rgf =
        tune_grid(Algorithm::kRgf, f, base, rgf_grid, iters, RngStream(seed, 5).child(b), reps);
    emit(names[b], "rgf", format_number(rgf.best_config.delta), format_number(n),
         format_number(rgf.best_config.eta), "", rgf.best);

    const TuneResult gd = tune_gd(fn, base, j, iters, reps, RngStream(seed, 6).child(b));
    emit(names[b], "gd", "", "", format_number(gd.best_config.eta),
         format_number(gd.best_config.noise_sd), gd.best);
  }
  return t;
}

}  // namespace

ExperimentDef prox_point_grid_def() {
  return {{"prox_point_grid", "prox_point",
           "Laplace proximal point traces on the benchmark suite over a (delta, N) grid"},
          resolve_grid, run_grid};
}

ExperimentDef rgf_compare_def() {
  return {{"rgf_compare", "rgf_compare",
           "Tuned Laplace proximal point vs random gradient-free oracle vs gradient descent"},
          resolve_compare, run_compare};
}

}  // namespace lapx::detail
