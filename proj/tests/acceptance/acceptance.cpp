// Acceptance checks, one per numbered criterion. Each prints a single
// PASS/FAIL line followed by indented diagnostics.

#include "lapx/benchmarks.hpp"
#include "lapx/bpgd.hpp"
#include "lapx/experiments.hpp"
#include "lapx/hj.hpp"
#include "lapx/laplace.hpp"
#include "lapx/optimizers.hpp"
#include "lapx/prox.hpp"
#include "lapx/quadrature.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace lapx;

namespace {

struct Outcome {
  bool pass = false;
  std::vector<std::string> notes;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

ObjectiveFn scalar(std::function<double(double)> fn) {
  return ObjectiveFn([fn = std::move(fn)](VectorRef y) { return fn(y[0]); }, 1);
}

QuadConfig interval(double lo, double hi) {
  QuadConfig cfg;
  cfg.domain = DomainBox::cube(1, lo, hi);
  return cfg;
}

double median(std::vector<double> v) { return percentile(std::move(v), 0.5); }

// 1. quadratic exactness of the quadrature oracle
Outcome quadratic_exactness() {
  Outcome out;
  RngStream rng(1001, 0);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const double alpha = rng.uniform(0.2, 5.0), c = rng.uniform(-3.0, 3.0);
    const double lambda = rng.uniform(0.2, 5.0), x = rng.uniform(-3.0, 3.0);
    const double delta = std::pow(10.0, rng.uniform(-3.0, 0.0));
    const ObjectiveFn f = scalar([=](double y) { return 0.5 * alpha * (y - c) * (y - c); });
    const ObjectiveFn g = scalar([=](double v) { return v * v / (2 * lambda); });
    const double v = quad_infconv_argmin(f, g, Vector::Constant(1, x), delta, interval(-30.0, 30.0))[0];
    worst = std::max(worst, std::abs(v - (x + lambda * alpha * c) / (1 + lambda * alpha)));
  }
  out.pass = worst <= 1e-8;
  out.notes.push_back(fmt("max |error| over 20 tuples = %.3g (limit 1e-8)", worst));
  return out;
}

// 2. oracle convergence on the three scalar test functions
Outcome oracle_convergence() {
  Outcome out;
  out.pass = true;
  const std::vector<double> deltas{1e-2, 1e-4, 1e-6};
  const long reference_points = 1L << 20;
  for (const auto& name : scalar_test_names()) {
    const ScalarTestFn fn = scalar_test_function(name);
    double best = kInf, reference = fn.lo;
    Vector y(1);
    for (long j = 0; j <= reference_points; ++j) {
      y[0] = fn.lo + (fn.hi - fn.lo) * static_cast<double>(j) / static_cast<double>(reference_points);
      const double v = fn.fn(y);
      if (v < best) {
        best = v;
        reference = y[0];
      }
    }
    QuadConfig cfg = interval(fn.lo, fn.hi);
    cfg.max_points_per_dim = 1L << 20;
    // the lacunary series is nowhere smooth, so it is integrated on the finest grid directly
    if (name == "lacunary_cosine") cfg.points_per_dim = cfg.max_points_per_dim;
    std::vector<double> dist;
    for (double delta : deltas) {
      double estimate;
      try {
        estimate = quad_self_normalized(fn.fn, identity_map, delta, cfg)[0];
      } catch (const QuadratureNotConverged& e) {
        estimate = e.last()[0];
        out.notes.push_back(fmt("%s: delta=%g did not converge", name.c_str(), delta));
        out.pass = false;
      }
      dist.push_back(std::abs(estimate - reference));
    }
    const bool close = dist.back() <= 1e-3;
    const bool decreasing = dist[0] > dist[1] && dist[1] > dist[2];
    out.pass = out.pass && close && decreasing;
    out.notes.push_back(fmt("%s: reference argmin %.12g, distances %.3g, %.3g, %.3g%s%s", name.c_str(),
                            reference, dist[0], dist[1], dist[2], close ? "" : " [not within 1e-3]",
                            decreasing ? "" : " [not strictly decreasing]"));
  }
  return out;
}

// 3. boundary minimizer
Outcome boundary_convergence() {
  Outcome out;
  out.pass = true;
  const ObjectiveFn phi = scalar([](double x) { return x; });
  for (double delta : {1e-1, 1e-2, 1e-3}) {
    const double v = quad_self_normalized(phi, identity_map, delta, interval(0.0, 1.0))[0];
    const bool ok = std::abs(v) <= 2 * delta;
    out.pass = out.pass && ok;
    out.notes.push_back(fmt("delta=%g: estimate %.6g (limit %.3g)", delta, v, 2 * delta));
  }
  return out;
}

// 4. soft-threshold prox
Outcome soft_threshold_prox() {
  Outcome out;
  const ObjectiveFn abs_fn = scalar([](double y) { return std::abs(y); });
  const std::vector<double> xs{3.0, 0.5, -2.0};
  int good_seeds = 0;
  std::vector<std::vector<double>> estimates(xs.size());
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    bool ok = true;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      ProxConfig cfg;
      cfg.lambda = 1.0;
      cfg.delta = 1e-3;
      cfg.n_samples = 1000000;
      cfg.rng = RngStream(seed, i);
      const double v = prox_laplace(abs_fn, Vector::Constant(1, xs[i]), cfg).point[0];
      estimates[i].push_back(v);
      ok = ok && std::abs(v - exact::soft_threshold(Vector::Constant(1, xs[i]), 1.0)[0]) <= 0.02;
    }
    good_seeds += ok;
  }
  out.pass = good_seeds >= 18;
  out.notes.push_back(fmt("%d/20 seeds within 0.02 at every x (need 18)", good_seeds));
  for (std::size_t i = 0; i < xs.size(); ++i)
    out.notes.push_back(fmt("x=%g: target %g, median estimate %.6g", xs[i],
                            exact::soft_threshold(Vector::Constant(1, xs[i]), 1.0)[0], median(estimates[i])));
  return out;
}

// 5. projections stay in convex sets
Outcome projection_containment() {
  Outcome out;
  out.pass = true;
  SetIndicator ball{[](VectorRef y) { return y.norm() <= 1.0; }, DomainBox::cube(2, -1.0, 1.0)};
  SetIndicator orthant{[](VectorRef y) { return (y.array() >= 0.0).all(); }, DomainBox::cube(2, 0.0, kInf)};
  const std::vector<std::tuple<std::string, SetIndicator, Vector>> cases{
      {"ball", ball, Eigen::Vector2d(1.05, 0.1)}, {"orthant", orthant, Eigen::Vector2d(0.5, -0.05)}};
  for (const auto& [name, K, x] : cases) {
    int checked = 0, inside = 0, degenerate = 0;
    for (double delta : {1.0, 0.1, 0.01})
      for (std::size_t n : {100, 1000, 10000})
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
          ++checked;
          try {
            inside += K.contains(project_laplace(K, x, delta, n, RngStream(seed, 5)).point);
          } catch (const DegenerateWeights&) {
            ++degenerate;
          }
        }
    out.pass = out.pass && inside == checked;
    out.notes.push_back(fmt("%s from (%g, %g): %d/%d estimates in K, %d degenerate", name.c_str(), x[0], x[1],
                            inside, checked, degenerate));
  }
  return out;
}

// 6. softmax shift invariance and overflow safety
Outcome softmax_properties() {
  Outcome out;
  RngStream rng(1006, 0);
  double worst_shift = 0.0;
  int non_finite = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const auto n = static_cast<Eigen::Index>(1 + rng.below(50));
    const double scale = std::pow(10.0, rng.uniform(-2.0, 4.0));
    Vector v(n);
    for (auto& e : v) e = rng.uniform(-scale, scale);
    const Vector w = stable_softmax(v);
    if (!w.allFinite() || std::abs(w.sum() - 1.0) > 1e-12) ++non_finite;
    const double shift = rng.uniform(-1e4, 1e4);
    worst_shift = std::max(worst_shift, (stable_softmax((v.array() + shift).matrix()) - w).cwiseAbs().maxCoeff());
  }
  out.pass = worst_shift <= 1e-12 && non_finite == 0;
  out.notes.push_back(fmt("max shift discrepancy %.3g (limit 1e-12), %d bad outputs over 1e4 vectors",
                          worst_shift, non_finite));
  return out;
}

std::vector<double> hj_deltas() {
  std::vector<double> out;
  for (int i = 0; i <= 6; ++i) out.push_back(std::pow(10.0, -3.0 + 0.5 * i));
  return out;
}

// 7. HJ sweep orderings
Outcome hj_orders() {
  Outcome out;
  HJConfig cfg = HJConfig::with_dim(2);
  cfg.p = 2.0;
  cfg.n_eval_points = 100;
  const ObjectiveFn f([](VectorRef x) { return x.lpNorm<1>(); }, 2);
  const std::vector<double> deltas = hj_deltas();
  const std::vector<std::size_t> ns{10, 1000, 100000};
  const HJSweepResult r = hj_sweep(f, cfg, deltas, ns, 10, RngStream(1007, 0));
  for (std::size_t n : ns) {
    std::string line = fmt("N=%zu medians:", n);
    for (double d : deltas) line += fmt(" %.3g", r.cell(d, n).median);
    out.notes.push_back(line);
  }
  const bool a = r.cell(deltas.front(), 100000).median < r.cell(deltas.front(), 10).median;
  std::size_t best = 0;
  for (std::size_t i = 1; i < deltas.size(); ++i)
    if (r.cell(deltas[i], 10).median < r.cell(deltas[best], 10).median) best = i;
  const bool b = best > 0 && best + 1 < deltas.size();
  out.pass = a && b;
  out.notes.push_back(fmt("(a) N=1e5 below N=10 at delta=1e-3: %s", a ? "yes" : "no"));
  out.notes.push_back(fmt("(b) N=10 minimum at delta=%g (interior: %s)", deltas[best], b ? "yes" : "no"));
  const double m10 = r.cell(deltas.front(), 10).median, m3 = r.cell(deltas.front(), 1000).median,
               m5 = r.cell(deltas.front(), 100000).median;
  out.notes.push_back(fmt("monotone in N at delta=1e-3 (%.3g, %.3g, %.3g): %s", m10, m3, m5,
                          m10 >= m3 && m3 >= m5 ? "yes" : "no"));
  return out;
}

// 8. HJ exact solutions
Outcome hj_exact() {
  Outcome out;
  const SolutionFn exact = [](VectorRef x, double t) { return x.squaredNorm() / (2.0 * (1.0 + t)); };
  RngStream rng(1008, 0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Eigen::Vector2d x(rng.uniform(-9.0, 9.0), rng.uniform(-9.0, 9.0));
    worst = std::max(worst, hj_residual(exact, x, rng.uniform(0.2, 1.0), 2.0, 1e-4));
  }
  HJConfig cfg = HJConfig::with_dim(2);
  cfg.n_eval_points = 100;
  const ObjectiveFn f([](VectorRef x) { return 0.5 * x.squaredNorm(); }, 2);
  const double med = hj_sweep(f, cfg, {1e-2}, {100000}, 1, RngStream(1008, 1)).pooled[0].median;
  out.pass = worst <= 1e-6 && med <= 0.05;
  out.notes.push_back(fmt("analytic stub: max residual %.3g over 100 points (limit 1e-6)", worst));
  out.notes.push_back(fmt("estimator, N=1e5, delta=1e-2: median residual %.3g (limit 0.05)", med));
  return out;
}

// 9. LPP on the sphere, then tuned LPP vs tuned GD
Outcome lpp_sanity() {
  Outcome out;
  const BenchmarkFn sphere(Benchmark::kSphere, 10);
  OptConfig cfg;
  cfg.max_iters = 300;
  cfg.lambda = 1.0;
  cfg.delta = 1e-3;
  cfg.n_samples = 10000;
  cfg.x0 = Vector::Constant(10, 4.0);
  bool sphere_ok = true;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const OptTrace t = run(Algorithm::kLpp, sphere.objective(), cfg, RngStream(seed, 0));
    std::size_t hit = 0;
    for (std::size_t k = 0; k < t.size() && !hit; ++k)
      if (t.values[k] < 1e-2) hit = k;
    sphere_ok = sphere_ok && hit > 0;
    out.notes.push_back(fmt("sphere seed %llu: %.6g -> %.3g after %zu iterations%s",
                            static_cast<unsigned long long>(seed), t.values.front(), t.values.back(),
                            t.size() - 1, hit ? fmt(" (below 1e-2 at %zu)", hit).c_str() : ""));
  }

  bool ordering_ok = true;
  for (const char* name : {"ellipsoidal", "discus"}) {
    const BenchmarkFn fn = benchmark(name, 10);
    OptConfig base = cfg;
    base.n_samples = 10000;
    TuneGrid lpp_grid;
    lpp_grid.deltas = {1e-4, 1e-3, 1e-2, 1e-1, 1.0};
    const TuneResult lpp = tune_grid(Algorithm::kLpp, fn.objective(), base, lpp_grid, 500, RngStream(1009, 0));
    TuneGrid gd_grid;
    gd_grid.etas = {1e-7, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1};
    gd_grid.noise_sds = {0.0, 1e-2, 1e-1, 1.0};
    const TuneResult gd = tune_grid(Algorithm::kGd, fn.objective(), base, gd_grid, 500, RngStream(1009, 1), 1,
                                    [fn](VectorRef x) { return fn.gradient(x); });
    const double lv = lpp.best.selection_value(), gv = gd.best.selection_value();
    ordering_ok = ordering_ok && lv < gv;
    out.notes.push_back(fmt("%s at iteration 500: LPP %.4g (delta=%g), GD %.4g (eta=%g, noise=%g)", name, lv,
                            lpp.best_config.delta, gv, gd.best_config.eta, gd.best_config.noise_sd));
  }
  out.pass = sphere_ok && ordering_ok;
  return out;
}

// 10. RGF steps against analytic GD steps on quadratics
Outcome rgf_correctness() {
  Outcome out;
  RngStream rng(1010, 0);
  int agree = 0;
  double worst_z = 0.0;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    const int d = 2 + static_cast<int>(rng.below(4));
    Vector diag(d), x(d);
    for (auto& v : diag) v = rng.uniform(0.5, 5.0);
    for (auto& v : x) v = rng.uniform(-3.0, 3.0);
    const ObjectiveFn f([diag](VectorRef y) { return 0.5 * y.dot(diag.cwiseProduct(y)); }, d);
    OptConfig cfg;
    cfg.eta = 0.05;
    cfg.delta = 1e-2;
    cfg.n_samples = 1000;
    cfg.x0 = x;
    const RngStream stream = RngStream(1010, 1).child(trial);
    const Vector step = rgf_step(f, x, cfg, stream);
    const GradientEstimate g = rgf_gradient(f, x, f(x), cfg.delta, cfg.n_samples, stream);
    const Vector gd_step = x - cfg.eta * diag.cwiseProduct(x);
    double z = 0.0;
    for (int i = 0; i < d; ++i) z = std::max(z, std::abs(step[i] - gd_step[i]) / (cfg.eta * g.std_error[i]));
    worst_z = std::max(worst_z, z);
    agree += z <= 5.0;
  }
  out.pass = agree == 100;
  out.notes.push_back(fmt("%d/100 trials within 5 standard errors (largest z = %.2f)", agree, worst_z));
  return out;
}

BPGDConfig paper_bpgd() {
  BPGDConfig cfg;
  cfg.eta = 1e-5;
  cfg.delta = 2e-3;
  cfg.n_samples = 50000;
  return cfg;
}

// 11. Laplace-Burg tracks exact BPGD
Outcome bpgd_equivalence() {
  Outcome out;
  out.pass = true;
  for (Conditioning c : {Conditioning::kWell, Conditioning::kIll}) {
    const PoissonProblem prob = gen_poisson_problem(5, 5, RngStream(1011, 0), c).problem;
    const BPGDConfig cfg = paper_bpgd();
    const OptTrace exact = bpgd_run(prob, cfg, BPGDVariant::kExact, 100, RngStream(1011, 1));
    const OptTrace burg = bpgd_run(prob, cfg, BPGDVariant::kLaplaceBurg, 100, RngStream(1011, 2));
    double dev = kInf;
    if (burg.size() == exact.size()) {
      dev = 0.0;
      for (std::size_t k = 0; k < exact.size(); ++k)
        dev = std::max(dev, (burg.iterates[k] - exact.iterates[k]).cwiseAbs().maxCoeff());
    }
    out.pass = out.pass && dev <= 0.1;
    out.notes.push_back(fmt("%s: max infinity-norm deviation over 100 iterations %.3g (limit 0.1)%s",
                            conditioning_name(c).c_str(), dev, burg.message.empty() ? "" : burg.message.c_str()));

    // grid oracle on iterates of the exact run
    const long points = 1000000;
    const double lo = 1e-6, hi = 50.0, spacing = (hi - lo) / static_cast<double>(points - 1);
    double worst = 0.0;
    for (std::size_t k = 0; k < 100; k += 10) {
      const Vector& z = exact.iterates[k];
      const Vector g = grad_d(prob, z);
      const Vector step = bpgd_exact_step(prob, z, cfg);
      for (int i = 0; i < 5; ++i) {
        double best = kInf, arg = lo;
        for (long j = 0; j < points; ++j) {
          const double y = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(points - 1);
          const double v = burg_subproblem(prob.mu, g[i], cfg.eta, y, z[i]);
          if (v < best) {
            best = v;
            arg = y;
          }
        }
        worst = std::max(worst, std::abs(arg - step[i]));
      }
    }
    out.pass = out.pass && worst <= spacing;
    out.notes.push_back(fmt("%s: exact step vs grid oracle max gap %.3g (grid spacing %.3g)",
                            conditioning_name(c).c_str(), worst, spacing));
  }
  return out;
}

// 12. variable metric accelerates on the rank-one instance
Outcome bpgd_acceleration() {
  Outcome out;
  int wins = 0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const RngStream rng(seed, 0);
    const PoissonProblem prob = gen_poisson_problem(5, 5, rng.child(0), Conditioning::kIll).problem;
    const BPGDConfig cfg = paper_bpgd();
    const OptTrace exact = bpgd_run(prob, cfg, BPGDVariant::kExact, 200, rng.child(1));
    const OptTrace vm = bpgd_run(prob, cfg, BPGDVariant::kLaplaceVariableMetric, 200, rng.child(2));
    const double e = exact.values.back(), v = vm.size() == exact.size() ? vm.values.back() : kInf;
    wins += v < e;
    out.notes.push_back(fmt("seed %llu: criterion at 200 exact %.9g, variable metric %.9g (start %.9g)%s",
                            static_cast<unsigned long long>(seed), e, v, exact.values.front(),
                            vm.message.empty() ? "" : (" " + vm.message).c_str()));
  }
  out.pass = wins == 3;
  out.notes.push_back(fmt("variable metric strictly lower in %d/3 seeds", wins));
  return out;
}

// 13. byte-identical reruns of every experiment
Outcome determinism() {
  Outcome out;
  out.pass = true;
  const std::map<std::string, std::string> small{
      {"hj_sweep", "[hj]\nn_eval_points = 5\nreps = 2\nn_samples = 10, 1000\ndeltas = 1e-2, 1e-1\n"},
      {"prox_point_grid",
       "[prox_point]\nbenchmarks = sphere, rosenbrock\nn_samples = 10, 100\ndeltas = 1e-2, 1\niters = 20\n"
       "reps = 2\ngd_reference = true\ngd_iters = 20\n"},
      {"rgf_compare",
       "[rgf_compare]\nbenchmarks = discus\nn_samples = 50\niters = 10\nreps = 1\nlpp_deltas = 1e-2, 1\n"
       "rgf_deltas = 1e-2\nrgf_etas = 1e-4, 1e-3\ngd_etas = 1e-3\ngd_noise_sds = 0, 1\n"},
      {"bpgd_compare", "[bpgd]\nn_samples = 500\niters = 10\n"},
      {"oracle_convergence", "[oracle]\nmax_points_per_dim = 65536\nreference_points = 4096\n"},
      {"projection_demo", "[projection]\nn_samples = 100, 1000\nreps = 2\n"}};
  const auto dir = std::filesystem::temp_directory_path() / "lapx_acceptance_determinism";
  std::filesystem::remove_all(dir);
  for (const auto& info : list_experiments()) {
    const auto it = small.find(info.name);
    const std::string body = it == small.end() ? "" : it->second;
    std::vector<std::string> bytes;
    for (const char* threads : {"1", "1", "3"}) {
      setenv("LAPX_NUM_THREADS", threads, 1);
      const std::string text = "[run]\nexperiment = " + info.name + "\nseed = 13\noutput = " +
                               (dir / (info.name + ".csv")).string() + "\n" + body;
      const ValidationResult v = validate_config(ConfigFile::parse(text));
      if (!v.errors.empty()) {
        bytes.push_back("invalid: " + v.errors.front());
        continue;
      }
      write_outputs(*v.resolved, run_experiment(*v.resolved));
      std::ifstream in(v.resolved->output, std::ios::binary);
      std::ostringstream s;
      s << in.rdbuf();
      bytes.push_back(s.str());
    }
    unsetenv("LAPX_NUM_THREADS");
    const bool same = bytes[0] == bytes[1] && bytes[1] == bytes[2] && bytes[0].rfind("seed,", 0) == 0;
    out.pass = out.pass && same;
    out.notes.push_back(fmt("%s: %zu bytes, reruns %s", info.name.c_str(), bytes[0].size(),
                            same ? "identical (1, 1 and 3 threads)" : "DIFFER"));
  }
  std::filesystem::remove_all(dir);
  return out;
}

const std::vector<std::pair<std::string, std::function<Outcome()>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<Outcome()>>> list{
      {"quadratic exactness of the quadrature oracle", quadratic_exactness},
      {"oracle convergence on Holder test functions", oracle_convergence},
      {"boundary minimizer convergence", boundary_convergence},
      {"soft-threshold prox at delta=1e-3, N=1e6", soft_threshold_prox},
      {"convex projection containment", projection_containment},
      {"softmax shift invariance and overflow", softmax_properties},
      {"HJ residual orderings", hj_orders},
      {"HJ exact-solution sanity", hj_exact},
      {"LPP sanity and ordering vs GD", lpp_sanity},
      {"RGF vs analytic GD steps", rgf_correctness},
      {"Laplace-Burg BPGD tracks exact BPGD", bpgd_equivalence},
      {"variable-metric BPGD acceleration", bpgd_acceleration},
      {"byte-identical reruns", determinism}};
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::size_t> selected;
  for (int i = 1; i < argc; ++i) {
    const int n = std::atoi(argv[i]);
    if (n < 1 || n > static_cast<int>(criteria().size())) {
      std::fprintf(stderr, "usage: %s [criterion 1-%zu ...]\n", argv[0], criteria().size());
      return 2;
    }
    selected.push_back(static_cast<std::size_t>(n));
  }
  if (selected.empty())
    for (std::size_t i = 1; i <= criteria().size(); ++i) selected.push_back(i);

  int failures = 0;
  for (std::size_t n : selected) {
    const auto& [title, check] = criteria()[n - 1];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2zu: %s  %s (%.1f s)\n", n, o.pass ? "PASS" : "FAIL", title.c_str(), secs);
    for (const auto& note : o.notes) std::printf("    %s\n", note.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
