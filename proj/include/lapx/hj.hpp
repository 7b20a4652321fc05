#ifndef LAPX_HJ_HPP_
#define LAPX_HJ_HPP_

#include "lapx/laplace.hpp"

#include <functional>
#include <vector>

namespace lapx {

/// Hamilton-Jacobi problem u_t + H(grad u) = 0, u(., 0) = f, with
/// H(v) = ||v||_p^p / p, solved through the Hopf-Lax inf-convolution of f
/// with g = t H*(. / t).
struct HJConfig {
  double p = 2.0;
  int dim = 2;
  double delta = 1e-2;
  std::size_t n_samples = 1000;
  DomainBox proposal_box = DomainBox::cube(2, -10.0, 10.0);
  std::size_t n_eval_points = 1000;
  double t_lo = 0.1;
  double t_hi = 1.0;
  double fd_step = 1e-3;

  void validate() const;
  static HJConfig with_dim(int dim);
};

/// q = p / (p - 1); requires p > 1.
double conjugate_exponent(double p);

/// ||v||_p^p / p.
double hamiltonian(double p, VectorRef v);

/// t H*(v / t) = t ||v / t||_q^q / q.
double conjugate_g(double p, double t, VectorRef v);

/// Hopf-Lax estimator with a fixed batch of uniform draws on the proposal
/// box and their f-values. Evaluating at different (x, t, delta) reuses the
/// same draws, which gives common random numbers across finite-difference
/// stencils.
class HJSolver {
 public:
  HJSolver(const ObjectiveFn& f, const HJConfig& cfg, const RngStream& rng);

  /// y_x^{delta,N}: importance-weighted argmin estimate of f(y) + g(x - y).
  LaplaceEstimate argmin(VectorRef x, double t, double delta) const;
  /// u(x, t) = f(y) + g(y - x) at y = argmin(x, t, delta).point.
  double solve(VectorRef x, double t, double delta) const;
  double solve(VectorRef x, double t) const { return solve(x, t, cfg_.delta); }

  const HJConfig& config() const { return cfg_; }

 private:
  ObjectiveFn f_;
  HJConfig cfg_;
  Matrix points_;
  Vector f_values_;
};

/// u^{delta,N}(x, t) computed through infconv_argmin with a uniform
/// proposal on cfg.proposal_box.
double hj_solution(const ObjectiveFn& f, VectorRef x, double t, const HJConfig& cfg,
                   const RngStream& rng);

using SolutionFn = std::function<double(VectorRef, double)>;

/// |u_t + H(grad u)| by central differences with step fd_step.
double hj_residual(const SolutionFn& u, VectorRef x, double t, double p, double fd_step);

/// Residual of the Laplace estimator; every stencil point reuses the same
/// draws from rng.
double hj_residual(const ObjectiveFn& f, VectorRef x, double t, const HJConfig& cfg,
                   const RngStream& rng);

/// One (delta, N, rep) cell summarized over its evaluation points.
struct HJSweepRow {
  double p = 0.0;
  int dim = 0;
  double delta = 0.0;
  std::size_t n_samples = 0;
  std::size_t rep = 0;
  double percentile20 = 0.0;
  double median = 0.0;
  double percentile80 = 0.0;
  double mean = 0.0;
  std::size_t missing_count = 0;
  bool unstable = false;
};

/// Pooled summary of one (delta, N) cell over all repetitions.
struct HJCellSummary {
  double delta = 0.0;
  std::size_t n_samples = 0;
  double percentile20 = 0.0;
  double median = 0.0;
  double percentile80 = 0.0;
  double mean = 0.0;
  std::size_t missing_count = 0;
};

struct HJSweepResult {
  std::vector<HJSweepRow> rows;       // ordered by N, then delta, then rep
  std::vector<HJCellSummary> pooled;  // ordered by N, then delta
  const HJCellSummary& cell(double delta, std::size_t n) const;
};

/// Residual percentiles over cfg.n_eval_points uniform (x, t) draws per
/// repetition, for every delta in delta_grid and N in n_grid. Evaluation
/// points and sample batches depend only on (rng, rep, point index), so
/// cells are compared on common random numbers. Cells where the estimator
/// degenerates are counted in missing_count.
HJSweepResult hj_sweep(const ObjectiveFn& f, const HJConfig& cfg,
                       const std::vector<double>& delta_grid,
                       const std::vector<std::size_t>& n_grid, std::size_t reps,
                       const RngStream& rng);

/// Linear-interpolation percentile, q in [0, 1]. Empty input gives NaN.
double percentile(std::vector<double> values, double q);

/// Cells with p this close to 1 are reported but flagged unstable.
bool hj_unstable(double p);

}  // namespace lapx

#endif  // LAPX_HJ_HPP_
