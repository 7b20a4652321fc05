#include "registry.hpp"

#include "lapx/hj.hpp"

#include <cmath>

namespace lapx::detail {

namespace {

std::vector<double> default_hj_deltas() {
  std::vector<double> out;
  for (int i = 0; i <= 6; ++i) out.push_back(std::pow(10.0, -3.0 + 0.5 * i));
  return out;
}

ObjectiveFn hj_objective(const std::string& name, int dim) {
  if (name == "l1") return ObjectiveFn([](VectorRef x) { return x.lpNorm<1>(); }, dim);
  if (name == "half_squared")
    return ObjectiveFn([](VectorRef x) { return 0.5 * x.squaredNorm(); }, dim);
  throw ConfigError("unknown objective '" + name + "' (expected l1 or half_squared)");
}

HJConfig hj_config(double p, int dim, const nlohmann::json& j) {
  HJConfig cfg = HJConfig::with_dim(dim);
  cfg.p = p;
  cfg.proposal_box = DomainBox::cube(dim, j["box_lo"].get<double>(), j["box_hi"].get<double>());
  cfg.n_eval_points = j["n_eval_points"].get<std::size_t>();
  cfg.t_lo = j["t_lo"].get<double>();
  cfg.t_hi = j["t_hi"].get<double>();
  cfg.fd_step = j["fd_step"].get<double>();
  return cfg;
}

void resolve(Params& p, std::uint64_t) {
  const std::string objective = p.text("objective", "l1");
  if (objective != "l1" && objective != "half_squared")
    p.fail("objective", "expected l1 or half_squared");
  const auto ps = p.reals("p", {2.0});
  require_nonempty(p, "p", ps.size());
  for (double v : ps)
    if (!(v > 1.0)) {
      p.fail("p", "q undefined, require p > 1");
      break;
    }
  const auto dims = p.integers("dim", {2});
  require_nonempty(p, "dim", dims.size());
  require_at_least(p, "dim", dims, 1);
  const auto deltas = p.reals("deltas", default_hj_deltas());
  require_nonempty(p, "deltas", deltas.size());
  require_positive(p, "deltas", deltas);
  const auto ns = p.integers("n_samples", {10, 1000, 100000});
  require_nonempty(p, "n_samples", ns.size());
  require_at_least(p, "n_samples", ns, 1);
  require_at_least(p, "reps", p.integer("reps", 10), 1);
  require_at_least(p, "n_eval_points", p.integer("n_eval_points", 1000), 1);
  const double lo = p.real("box_lo", -10.0), hi = p.real("box_hi", 10.0);
  const double t_lo = p.real("t_lo", 0.1), t_hi = p.real("t_hi", 1.0);
  const double h = p.real("fd_step", 1e-3);
  require_positive(p, "fd_step", h);
  if (!(lo < hi)) p.fail("box_hi", "must exceed box_lo");
  if (!(t_lo > 0.0)) p.fail("t_lo", "must be positive");
  if (!(t_hi > t_lo)) p.fail("t_hi", "must exceed t_lo");
  if (h > 0.0 && t_hi > t_lo && t_hi - t_lo <= 2.0 * h) p.fail("fd_step", "stencil wider than the t range");
  if (h > 0.0 && hi > lo && hi - lo <= 2.0 * h) p.fail("fd_step", "stencil wider than the box");
}

Table run(const nlohmann::json& j, std::uint64_t seed) {
  Table t;
  t.columns = {"objective", "p",      "d",     "delta",        "N",    "rep",
               "percentile20", "median", "percentile80", "mean", "missing_count", "unstable"};
  const std::string objective = j["objective"];
  const auto deltas = j["deltas"].get<std::vector<double>>();
  const auto ns = json_sizes(j["n_samples"]);
  const auto reps = j["reps"].get<std::size_t>();
  const RngStream rng(seed, 1);
  for (double p : j["p"].get<std::vector<double>>()) {
    for (long dim : j["dim"].get<std::vector<long>>()) {
      const int d = static_cast<int>(dim);
      const HJConfig cfg = hj_config(p, d, j);
      const HJSweepResult result = hj_sweep(hj_objective(objective, d), cfg, deltas, ns, reps, rng);
      const std::string unstable = hj_unstable(p) ? "true" : "false";
      for (const auto& r : result.rows)
        t.add({objective, format_number(p), format_number(dim), format_number(r.delta),
               format_number(r.n_samples), format_number(r.rep), format_number(r.percentile20),
               format_number(r.median), format_number(r.percentile80), format_number(r.mean),
               format_number(r.missing_count), unstable});
      for (const auto& c : result.pooled)
        t.add({objective, format_number(p), format_number(dim), format_number(c.delta),
               format_number(c.n_samples), "all", format_number(c.percentile20),
               format_number(c.median), format_number(c.percentile80), format_number(c.mean),
               format_number(c.missing_count), unstable});
    }
  }
  return t;
}

}  // namespace

ExperimentDef hj_sweep_def() {
  return {{"hj_sweep", "hj",
           "Hamilton-Jacobi residual percentiles over a (delta, N) grid for H = ||.||_p^p / p"},
          resolve, run};
}

}  // namespace lapx::detail
