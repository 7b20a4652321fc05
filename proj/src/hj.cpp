#include "lapx/hj.hpp"

#include "lapx/parallel.hpp"
#include "lapx/prox.hpp"
#include "lapx/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lapx {

void HJConfig::validate() const {
  if (!(p > 1.0)) throw ConfigError("hj.p: q undefined, require p > 1");
  if (dim < 1) throw ConfigError("hj.dim: must be positive");
  if (proposal_box.dim() != dim) throw ConfigError("hj.box: dimension does not match hj.dim");
  if (!(delta > 0.0)) throw ConfigError("hj.delta: must be positive");
  if (n_samples == 0) throw ConfigError("hj.n_samples: must be at least 1");
  if (!(fd_step > 0.0)) throw ConfigError("hj.fd_step: must be positive");
  if (!(t_lo > 0.0) || !(t_hi > t_lo)) throw ConfigError("hj.t_range: require 0 < t_lo < t_hi");
  if (t_hi - t_lo <= 2.0 * fd_step) throw ConfigError("hj.t_range: narrower than the stencil");
  if ((proposal_box.hi - proposal_box.lo).minCoeff() <= 2.0 * fd_step)
    throw ConfigError("hj.box: narrower than the stencil");
}

HJConfig HJConfig::with_dim(int dim) {
  HJConfig cfg;
  cfg.dim = dim;
  cfg.proposal_box = DomainBox::cube(dim, -10.0, 10.0);
  return cfg;
}

double conjugate_exponent(double p) {
  if (!(p > 1.0)) throw ConfigError("q undefined, require p > 1");
  return p / (p - 1.0);
}

double hamiltonian(double p, VectorRef v) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += std::pow(std::abs(v[i]), p);
  return s / p;
}

double conjugate_g(double p, double t, VectorRef v) {
  if (!(t > 0.0)) throw DomainError("conjugate_g: t must be positive");
  const double q = conjugate_exponent(p);
  if (q == 2.0) return v.squaredNorm() / (2.0 * t);
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += std::pow(std::abs(v[i]) / t, q);
  return t * s / q;
}

HJSolver::HJSolver(const ObjectiveFn& f, const HJConfig& cfg, const RngStream& rng)
    : f_(f), cfg_(cfg) {
  cfg_.validate();
  points_ = sample(UniformBoxProposal{cfg_.proposal_box}, cfg_.n_samples, rng);
  f_values_ = evaluate_batch(f_, points_);
}

LaplaceEstimate HJSolver::argmin(VectorRef x, double t, double delta) const {
  if (!(delta > 0.0)) throw ConfigError("hj: delta must be positive");
  Vector logw(points_.cols());
  Vector diff(points_.rows());
  // the uniform proposal density is constant and drops out
  for (Eigen::Index i = 0; i < points_.cols(); ++i) {
    diff = x - points_.col(i);
    const double total = f_values_[i] + conjugate_g(cfg_.p, t, diff);
    logw[i] = total == kInf ? -kInf : -total / delta;
  }
  LaplaceEstimate est;
  est.max_logw = finite_max(logw);
  const Vector w = stable_softmax(logw);
  est.point = points_ * w;
  est.ess = 1.0 / w.squaredNorm();
  est.retained = (w.array() > 0.0).count();
  return est;
}

double HJSolver::solve(VectorRef x, double t, double delta) const {
  const Vector y = argmin(x, t, delta).point;
  return f_.eval(y) + conjugate_g(cfg_.p, t, y - x);
}

double hj_solution(const ObjectiveFn& f, VectorRef x, double t, const HJConfig& cfg,
                   const RngStream& rng) {
  cfg.validate();
  const double p = cfg.p;
  ObjectiveFn g([p, t](VectorRef v) { return conjugate_g(p, t, v); }, cfg.dim);
  const Vector y =
      infconv_argmin(f, g, x, cfg.delta, UniformBoxProposal{cfg.proposal_box}, cfg.n_samples, rng)
          .point;
  // g is even, so g(y - x) = g(x - y)
  return f.eval(y) + conjugate_g(p, t, y - x);
}

double hj_residual(const SolutionFn& u, VectorRef x, double t, double p, double fd_step) {
  if (!(fd_step > 0.0)) throw ConfigError("hj_residual: fd_step must be positive");
  if (!(t - fd_step > 0.0)) throw DomainError("hj_residual: t must exceed fd_step");
  const double h = fd_step;
  const double u_t = (u(x, t + h) - u(x, t - h)) / (2.0 * h);
  Vector grad(x.size());
  Vector y = x;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double xj = y[j];
    y[j] = xj + h;
    const double up = u(y, t);
    y[j] = xj - h;
    const double down = u(y, t);
    y[j] = xj;
    grad[j] = (up - down) / (2.0 * h);
  }
  return std::abs(u_t + hamiltonian(p, grad));
}

double hj_residual(const ObjectiveFn& f, VectorRef x, double t, const HJConfig& cfg,
                   const RngStream& rng) {
  const HJSolver solver(f, cfg, rng);
  return hj_residual([&](VectorRef y, double s) { return solver.solve(y, s); }, x, t, cfg.p,
                     cfg.fd_step);
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) return std::nan("");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

bool hj_unstable(double p) { return conjugate_exponent(p) > 6.0; }

const HJCellSummary& HJSweepResult::cell(double delta, std::size_t n) const {
  for (const auto& c : pooled)
    if (c.n_samples == n && std::abs(c.delta - delta) <= 1e-12 * std::abs(delta)) return c;
  throw ConfigError("hj sweep: no such cell");
}

namespace {

struct Summary {
  double p20, median, p80, mean;
};

Summary summarize(const std::vector<double>& r) {
  if (r.empty()) return {std::nan(""), std::nan(""), std::nan(""), std::nan("")};
  const double mean = std::accumulate(r.begin(), r.end(), 0.0) / static_cast<double>(r.size());
  return {percentile(r, 0.2), percentile(r, 0.5), percentile(r, 0.8), mean};
}

}  // namespace

HJSweepResult hj_sweep(const ObjectiveFn& f, const HJConfig& cfg,
                       const std::vector<double>& delta_grid,
                       const std::vector<std::size_t>& n_grid, std::size_t reps,
                       const RngStream& rng) {
  cfg.validate();
  if (delta_grid.empty() || n_grid.empty()) throw ConfigError("hj_sweep: grids must be non-empty");
  if (reps == 0) throw ConfigError("hj_sweep: reps must be at least 1");
  if (cfg.n_eval_points == 0) throw ConfigError("hj_sweep: n_eval_points must be at least 1");

  const std::size_t n_delta = delta_grid.size(), n_n = n_grid.size();
  const std::size_t points = cfg.n_eval_points;
  const double h = cfg.fd_step;
  // residual[(((ni * n_delta) + di) * reps + r) * points + j]
  std::vector<double> residual(n_n * n_delta * reps * points, std::nan(""));

  for (std::size_t r = 0; r < reps; ++r) {
    const RngStream rep_stream = rng.child(r);
    // evaluation points keep the whole stencil inside the box and t-range
    RngStream where = rep_stream.child(0);
    Matrix xs(cfg.dim, static_cast<Eigen::Index>(points));
    std::vector<double> ts(points);
    for (std::size_t j = 0; j < points; ++j) {
      for (int k = 0; k < cfg.dim; ++k)
        xs(k, static_cast<Eigen::Index>(j)) =
            where.uniform(cfg.proposal_box.lo[k] + h, cfg.proposal_box.hi[k] - h);
      ts[j] = where.uniform(cfg.t_lo + h, cfg.t_hi - h);
    }

    parallel_for(points, [&](std::size_t j) {
      const RngStream batch_stream = rep_stream.child(1 + j);
      for (std::size_t ni = 0; ni < n_n; ++ni) {
        HJConfig cell = cfg;
        cell.n_samples = n_grid[ni];
        const HJSolver solver(f, cell, batch_stream);
        for (std::size_t di = 0; di < n_delta; ++di) {
          const double delta = delta_grid[di];
          double value;
          try {
            value = hj_residual([&](VectorRef y, double s) { return solver.solve(y, s, delta); },
                                xs.col(static_cast<Eigen::Index>(j)), ts[j], cfg.p, h);
          } catch (const DegenerateWeights&) {
            value = std::nan("");
          }
          residual[(((ni * n_delta) + di) * reps + r) * points + j] = value;
        }
      }
    });
  }

  HJSweepResult result;
  for (std::size_t ni = 0; ni < n_n; ++ni) {
    for (std::size_t di = 0; di < n_delta; ++di) {
      std::vector<double> pooled;
      std::size_t pooled_missing = 0;
      for (std::size_t r = 0; r < reps; ++r) {
        std::vector<double> vals;
        std::size_t missing = 0;
        for (std::size_t j = 0; j < points; ++j) {
          const double v = residual[(((ni * n_delta) + di) * reps + r) * points + j];
          if (std::isfinite(v)) vals.push_back(v);
          else ++missing;
        }
        const Summary s = summarize(vals);
        result.rows.push_back({cfg.p, cfg.dim, delta_grid[di], n_grid[ni], r, s.p20, s.median,
                               s.p80, s.mean, missing, hj_unstable(cfg.p)});
        pooled.insert(pooled.end(), vals.begin(), vals.end());
        pooled_missing += missing;
      }
      const Summary s = summarize(pooled);
      result.pooled.push_back(
          {delta_grid[di], n_grid[ni], s.p20, s.median, s.p80, s.mean, pooled_missing});
    }
  }
  return result;
}

}  // namespace lapx
