#include "lapx/optimizers.hpp"

#include "lapx/laplace.hpp"
#include "lapx/prox.hpp"
#include "lapx/samplers.hpp"

#include <chrono>
#include <cmath>

namespace lapx {

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kLpp: return "lpp";
    case Algorithm::kRgf: return "rgf";
    case Algorithm::kGd: return "gd";
  }
  return "unknown";
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "lpp") return Algorithm::kLpp;
  if (name == "rgf") return Algorithm::kRgf;
  if (name == "gd") return Algorithm::kGd;
  throw ConfigError("unknown algorithm '" + name + "'");
}

void OptConfig::validate(Algorithm algorithm) const {
  if (x0.size() == 0) throw ConfigError("optimizer: x0 must be set");
  if (!(delta > 0.0) && algorithm != Algorithm::kGd)
    throw ConfigError("optimizer: delta must be positive");
  if (algorithm == Algorithm::kLpp && !(lambda > 0.0))
    throw ConfigError("optimizer: lambda must be positive");
  if (algorithm != Algorithm::kGd && n_samples == 0)
    throw ConfigError("optimizer: n_samples must be at least 1");
  if (algorithm != Algorithm::kLpp && !(eta >= 0.0))
    throw ConfigError("optimizer: eta must be nonnegative");
  if (!(noise_sd >= 0.0)) throw ConfigError("optimizer: noise_sd must be nonnegative");
}

double OptTrace::selection_value() const {
  if (status != TraceStatus::kCompleted || values.empty()) return kInf;
  return std::isnan(values.back()) ? kInf : values.back();
}

Vector lpp_step(const ObjectiveFn& f, VectorRef x_prev, const OptConfig& cfg,
                const RngStream& rng) {
  ProxConfig prox{cfg.lambda, cfg.delta, cfg.n_samples, rng};
  return prox_laplace(f, x_prev, prox).point;
}

GradientEstimate rgf_gradient(const ObjectiveFn& f, VectorRef x, double fx, double delta,
                              std::size_t n_samples, const RngStream& rng) {
  if (!(delta > 0.0)) throw ConfigError("rgf: delta must be positive");
  const Matrix ys = sample(GaussianProposal{x, delta}, n_samples, rng);
  const Vector fy = evaluate_batch(f, ys);
  const Eigen::Index d = x.size();
  const auto n = static_cast<double>(n_samples);

  Vector mean = Vector::Zero(d);
  Vector sq = Vector::Zero(d);
  Vector term(d);
  for (Eigen::Index i = 0; i < ys.cols(); ++i) {
    term = ((fy[i] - fx) / delta) * (ys.col(i) - x);
    mean += term;
    sq += term.cwiseAbs2();
  }
  mean /= n;
  GradientEstimate est;
  est.std_error = Vector::Zero(d);
  if (n_samples > 1) {
    const Vector var = ((sq / n) - mean.cwiseAbs2()).cwiseMax(0.0) * (n / (n - 1.0));
    est.std_error = (var / n).cwiseSqrt();
  }
  est.mean = std::move(mean);
  return est;
}

Vector rgf_step(const ObjectiveFn& f, VectorRef x_prev, const OptConfig& cfg,
                const RngStream& rng) {
  const double fx = f.eval(x_prev);
  return x_prev - cfg.eta * rgf_gradient(f, x_prev, fx, cfg.delta, cfg.n_samples, rng).mean;
}

namespace {

constexpr double kDivergenceNorm = 1e8;

void record(OptTrace& trace, const ObjectiveFn& f, const Vector& x, std::uint64_t evals) {
  trace.iterates.push_back(x);
  trace.values.push_back(f.eval(x));
  trace.evals.push_back(evals);
}

bool diverged(const Vector& x) { return !x.allFinite() || x.norm() > kDivergenceNorm; }

}  // namespace

OptTrace gd_run(const ObjectiveFn& f, const GradientFn& grad, const OptConfig& cfg,
                const RngStream& rng) {
  cfg.validate(Algorithm::kGd);
  if (!grad) throw ConfigError("gd: a gradient function is required");
  const auto start = std::chrono::steady_clock::now();
  OptTrace trace;
  trace.seed = rng;
  Vector x = cfg.x0;
  record(trace, f, x, 0);
  for (std::size_t k = 1; k <= cfg.max_iters; ++k) {
    Vector g = grad(x);
    if (cfg.noise_sd > 0.0) {
      RngStream noise = rng.child(k);
      for (Eigen::Index j = 0; j < g.size(); ++j) g[j] += cfg.noise_sd * noise.normal();
    }
    x -= cfg.eta * g;
    if (diverged(x)) {
      trace.status = TraceStatus::kDiverged;
      trace.message = "divergence guard: ||x|| > 1e8 at iteration " + std::to_string(k);
      break;
    }
    record(trace, f, x, k);
  }
  trace.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return trace;
}

OptTrace run(Algorithm algorithm, const ObjectiveFn& f, const OptConfig& cfg,
             const RngStream& rng, const GradientFn& grad) {
  if (algorithm == Algorithm::kGd) return gd_run(f, grad, cfg, rng);
  cfg.validate(algorithm);
  if (cfg.x0.size() != f.dim()) throw ConfigError("optimizer: x0 has wrong dimension");

  const auto start = std::chrono::steady_clock::now();
  const ObjectiveFn counted = with_counter(f);
  OptTrace trace;
  trace.seed = rng;
  Vector x = cfg.x0;
  record(trace, f, x, 0);
  for (std::size_t k = 1; k <= cfg.max_iters; ++k) {
    try {
      x = algorithm == Algorithm::kLpp ? lpp_step(counted, x, cfg, rng.child(k))
                                       : rgf_step(counted, x, cfg, rng.child(k));
    } catch (const DegenerateWeights& e) {
      trace.status = TraceStatus::kDegenerate;
      trace.message = std::string(e.what()) + " at iteration " + std::to_string(k);
      break;
    }
    if (diverged(x)) {
      trace.status = TraceStatus::kDiverged;
      trace.message = "divergence guard: ||x|| > 1e8 at iteration " + std::to_string(k);
      break;
    }
    record(trace, f, x, counted.eval_count());
  }
  trace.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return trace;
}

std::vector<OptTrace> run_repeated(Algorithm algorithm, const ObjectiveFn& f,
                                   const OptConfig& cfg, std::size_t reps,
                                   const RngStream& rng, const GradientFn& grad) {
  if (reps == 0) throw ConfigError("run_repeated: reps must be at least 1");
  std::vector<OptTrace> traces;
  traces.reserve(reps);
  for (std::size_t r = 0; r < reps; ++r) traces.push_back(run(algorithm, f, cfg, rng.child(r), grad));
  return traces;
}

OptTrace average_traces(const std::vector<OptTrace>& traces) {
  if (traces.empty()) throw ConfigError("average_traces: no traces");
  std::size_t len = 0;
  for (const auto& t : traces) len = std::max(len, t.size());
  OptTrace out;
  out.seed = traces.front().seed;
  out.values.assign(len, 0.0);
  out.evals.assign(len, 0);
  std::vector<double> evals(len, 0.0);
  for (const auto& t : traces) {
    if (t.status != TraceStatus::kCompleted) {
      out.status = t.status;
      out.message = t.message;
    }
    for (std::size_t k = 0; k < len; ++k) {
      out.values[k] += k < t.size() ? t.values[k] : kInf;
      evals[k] += k < t.size() ? static_cast<double>(t.evals[k]) : static_cast<double>(t.evals.back());
    }
  }
  const auto n = static_cast<double>(traces.size());
  for (std::size_t k = 0; k < len; ++k) {
    out.values[k] /= n;
    out.evals[k] = static_cast<std::uint64_t>(std::llround(evals[k] / n));
  }
  // iterates of the first repetition, kept for inspection
  out.iterates = traces.front().iterates;
  for (const auto& t : traces) out.wall_seconds += t.wall_seconds;
  return out;
}

std::vector<OptConfig> expand_grid(Algorithm algorithm, const OptConfig& base,
                                   const TuneGrid& grid) {
  auto or_base = [](const auto& list, auto value) {
    using T = typename std::decay_t<decltype(list)>::value_type;
    return list.empty() ? std::vector<T>{static_cast<T>(value)} : list;
  };
  bool any = false;
  std::vector<OptConfig> out;
  switch (algorithm) {
    case Algorithm::kLpp:
      any = !grid.deltas.empty() || !grid.n_samples.empty();
      for (double delta : or_base(grid.deltas, base.delta))
        for (std::size_t n : or_base(grid.n_samples, base.n_samples)) {
          OptConfig c = base;
          c.delta = delta;
          c.n_samples = n;
          out.push_back(c);
        }
      break;
    case Algorithm::kRgf:
      any = !grid.deltas.empty() || !grid.etas.empty() || !grid.n_samples.empty();
      for (double delta : or_base(grid.deltas, base.delta))
        for (double eta : or_base(grid.etas, base.eta))
          for (std::size_t n : or_base(grid.n_samples, base.n_samples)) {
            OptConfig c = base;
            c.delta = delta;
            c.eta = eta;
            c.n_samples = n;
            out.push_back(c);
          }
      break;
    case Algorithm::kGd:
      any = !grid.etas.empty() || !grid.noise_sds.empty();
      for (double eta : or_base(grid.etas, base.eta))
        for (double sd : or_base(grid.noise_sds, base.noise_sd)) {
          OptConfig c = base;
          c.eta = eta;
          c.noise_sd = sd;
          out.push_back(c);
        }
      break;
  }
  if (!any) throw ConfigError("tune_grid: empty grid for " + algorithm_name(algorithm));
  return out;
}

TuneResult tune_grid(Algorithm algorithm, const ObjectiveFn& f, const OptConfig& base,
                     const TuneGrid& grid, std::size_t budget_iters, const RngStream& rng,
                     std::size_t reps, const GradientFn& grad) {
  TuneResult result;
  result.candidates = expand_grid(algorithm, base, grid);
  double best = kInf;
  bool have = false;
  for (OptConfig cfg : result.candidates) {
    cfg.max_iters = budget_iters;
    OptTrace avg = average_traces(run_repeated(algorithm, f, cfg, reps, rng, grad));
    const double value = avg.selection_value();
    result.final_values.push_back(value);
    if (!have || value < best) {
      have = true;
      best = value;
      result.best = std::move(avg);
      result.best_config = cfg;
    }
  }
  return result;
}

}  // namespace lapx
