#include "registry.hpp"

#include "lapx/benchmarks.hpp"
#include "lapx/prox.hpp"
#include "lapx/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace lapx::detail {

namespace {

// -- oracle_convergence ----------------------------------------------------

// First node attaining the minimum of phi on a uniform grid.
double grid_argmin(const ObjectiveFn& phi, double lo, double hi, long subintervals) {
  double best = kInf, arg = lo;
  Vector y(1);
  for (long j = 0; j <= subintervals; ++j) {
    y[0] = j == subintervals ? hi : lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(subintervals);
    const double v = phi.eval(y);
    if (v < best) {
      best = v;
      arg = y[0];
    }
  }
  return arg;
}

void resolve_oracle(Params& p, std::uint64_t) {
  const auto fns = p.texts("functions", scalar_test_names());
  require_nonempty(p, "functions", fns.size());
  for (const auto& f : fns) {
    try {
      scalar_test_function(f);
    } catch (const ConfigError& e) {
      p.fail("functions", e.what());
    }
  }
  const auto deltas = p.reals("deltas", {1e-2, 1e-4, 1e-6});
  require_nonempty(p, "deltas", deltas.size());
  require_positive(p, "deltas", deltas);
  const std::string rule = p.text("rule", "simpson");
  if (rule != "simpson" && rule != "trapezoid") p.fail("rule", "expected simpson or trapezoid");
  const long start = p.integer("points_per_dim", 64);
  const long cap = p.integer("max_points_per_dim", 1L << 20);
  require_at_least(p, "points_per_dim", start, 64);
  if (cap < start) p.fail("max_points_per_dim", "must be at least points_per_dim");
  if (rule == "simpson" && (start % 2 != 0 || cap % 2 != 0))
    p.fail("points_per_dim", "simpson needs even counts");
  require_positive(p, "tolerance", p.real("tolerance", 1e-9));
  for (const auto& f : p.texts("fixed_grid", {"lacunary_cosine"}))
    if (std::find(fns.begin(), fns.end(), f) == fns.end())
      p.fail("fixed_grid", "'" + f + "' is not one of the listed functions");
  require_at_least(p, "reference_points", p.integer("reference_points", 1L << 20), 2);
}

Table run_oracle(const nlohmann::json& j, std::uint64_t) {
  Table t;
  t.columns = {"function", "delta", "estimate", "reference_argmin", "distance",
               "points_per_dim", "grid_ess", "status"};
  const auto fixed = j["fixed_grid"].get<std::vector<std::string>>();
  for (const auto& name : j["functions"].get<std::vector<std::string>>()) {
    const ScalarTestFn fn = scalar_test_function(name);
    const double reference = grid_argmin(fn.fn, fn.lo, fn.hi, j["reference_points"].get<long>());
    const bool is_fixed = std::find(fixed.begin(), fixed.end(), name) != fixed.end();
    QuadConfig cfg;
    cfg.domain = DomainBox::cube(1, fn.lo, fn.hi);
    cfg.rule = j["rule"].get<std::string>() == "simpson" ? QuadRule::kSimpson : QuadRule::kTrapezoid;
    cfg.max_points_per_dim = j["max_points_per_dim"].get<long>();
    cfg.points_per_dim = is_fixed ? cfg.max_points_per_dim : j["points_per_dim"].get<long>();
    cfg.tolerance = j["tolerance"].get<double>();
    for (double delta : j["deltas"].get<std::vector<double>>()) {
      std::string status = is_fixed ? "fixed_grid" : "converged";
      double estimate, ess = std::nan("");
      long points = cfg.max_points_per_dim;
      try {
        const QuadResult r = quad_self_normalized_report(fn.fn, identity_map, delta, cfg);
        estimate = r.value[0];
        ess = r.grid_ess;
        points = r.points_per_dim;
      } catch (const QuadratureNotConverged& e) {
        status = "not_converged";
        estimate = e.last()[0];
      }
      t.add({name, format_number(delta), format_number(estimate), format_number(reference),
             format_number(std::abs(estimate - reference)), format_number(points),
             format_number(ess), status});
    }
  }
  return t;
}

// -- projection_demo -------------------------------------------------------

SetIndicator make_set(const std::string& kind, int dim, double radius) {
  SetIndicator K;
  if (kind == "ball") {
    K.contains = [radius](VectorRef y) { return y.norm() <= radius; };
    K.bounding_box = DomainBox::cube(dim, -radius, radius);
  } else {
    K.contains = [](VectorRef y) { return (y.array() >= 0.0).all(); };
    K.bounding_box = DomainBox::cube(dim, 0.0, kInf);
  }
  return K;
}

void resolve_projection(Params& p, std::uint64_t) {
  const std::string set = p.text("set", "ball");
  if (set != "ball" && set != "orthant") p.fail("set", "expected ball or orthant");
  require_positive(p, "radius", p.real("radius", 1.0));
  const auto x = p.reals("x", {1.2, 0.3});
  require_nonempty(p, "x", x.size());
  const auto deltas = p.reals("deltas", {1.0, 0.1, 0.01});
  require_nonempty(p, "deltas", deltas.size());
  require_positive(p, "deltas", deltas);
  const auto ns = p.integers("n_samples", {100000});
  require_nonempty(p, "n_samples", ns.size());
  require_at_least(p, "n_samples", ns, 1);
  require_at_least(p, "reps", p.integer("reps", 1), 1);
}

Table run_projection(const nlohmann::json& j, std::uint64_t seed) {
  const auto xs = j["x"].get<std::vector<double>>();
  const int dim = static_cast<int>(xs.size());
  const Vector x = Eigen::Map<const Vector>(xs.data(), dim);
  const std::string set = j["set"].get<std::string>();
  const double radius = j["radius"].get<double>();
  const SetIndicator K = make_set(set, dim, radius);
  const Vector exact =
      set == "ball" ? exact::project_ball(x, Vector::Zero(dim), radius) : exact::project_orthant(x);

  Table t;
  t.columns = {"set", "delta", "N", "rep"};
  for (int i = 0; i < dim; ++i) t.columns.push_back("estimate_" + std::to_string(i + 1));
  for (int i = 0; i < dim; ++i) t.columns.push_back("exact_" + std::to_string(i + 1));
  for (const char* c : {"distance", "retained", "in_set", "status"}) t.columns.push_back(c);

  const RngStream rng(seed, 9);
  const auto reps = j["reps"].get<std::size_t>();
  for (std::size_t n : json_sizes(j["n_samples"])) {
    for (double delta : j["deltas"].get<std::vector<double>>()) {
      for (std::size_t r = 0; r < reps; ++r) {
        std::vector<std::string> row{set, format_number(delta), format_number(n), format_number(r)};
        try {
          const LaplaceEstimate est = project_laplace(K, x, delta, n, rng.child(r));
          for (int i = 0; i < dim; ++i) row.push_back(format_number(est.point[i]));
          for (int i = 0; i < dim; ++i) row.push_back(format_number(exact[i]));
          row.push_back(format_number((est.point - exact).norm()));
          row.push_back(format_number(static_cast<std::size_t>(est.retained)));
          row.push_back(K.contains(est.point) ? "true" : "false");
          row.push_back("ok");
        } catch (const DegenerateWeights&) {
          for (int i = 0; i < dim; ++i) row.push_back("nan");
          for (int i = 0; i < dim; ++i) row.push_back(format_number(exact[i]));
          row.insert(row.end(), {"nan", "0", "false", "degenerate"});
        }
        t.add(std::move(row));
      }
    }
  }
  return t;
}

}  // namespace

ExperimentDef oracle_convergence_def() {
  return {{"oracle_convergence", "oracle",
           "Quadrature of the self-normalized Laplace ratio on 1-d Holder test functions"},
          resolve_oracle, run_oracle};
}

ExperimentDef projection_demo_def() {
  return {{"projection_demo", "projection",
           "Smoothed set projection E[Y | Y in K] for shrinking delta"},
          resolve_projection, run_projection};
}

}  // namespace lapx::detail
