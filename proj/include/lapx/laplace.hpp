#ifndef LAPX_LAPLACE_HPP_
#define LAPX_LAPLACE_HPP_

#include "lapx/core.hpp"

#include <functional>

namespace lapx {

/// N points (columns of a d x N matrix) with unnormalized log-weights.
struct SampleBatch {
  Matrix points;
  Vector logw;

  int dim() const { return static_cast<int>(points.rows()); }
  Eigen::Index size() const { return points.cols(); }
};

/// Weighted-average estimate plus weight diagnostics.
struct LaplaceEstimate {
  Vector point;
  double ess = 0.0;       // 1 / sum w_i^2
  double max_logw = 0.0;  // softmax shift that was applied
  Eigen::Index retained = 0;  // samples with nonzero weight
  Vector std_error;       // delta-method standard error of each coordinate
};

/// softmax(v) computed as exp(v - max v) / sum. Entries equal to -inf get
/// weight exactly zero. Throws DegenerateWeights if no entry is finite.
Vector stable_softmax(const Vector& v);

/// Returns max_i v_i over finite entries, or throws DegenerateWeights.
double finite_max(const Vector& v);

/// sum_i w_i Y_i with w = stable_softmax(batch.logw).
LaplaceEstimate self_normalized_mean(const SampleBatch& batch);

/// sum_i w_i h(Y_i) for a vector-valued h.
LaplaceEstimate self_normalized_mean(const SampleBatch& batch,
                                     const std::function<Vector(VectorRef)>& h);

/// f evaluated at every column of points. Chunked over worker threads;
/// output order matches column order.
Vector evaluate_batch(const ObjectiveFn& f, const Matrix& points);

/// logw_i = (-f(Y_i) - g(x - Y_i)) / delta - log q(Y_i).
///
/// The normalizing constant of exp(-g(x - .)/delta) is dropped since it
/// cancels in every self-normalized ratio. Samples where f or g is +inf
/// get logw = -inf.
Vector importance_log_weights(const ObjectiveFn& f, const ObjectiveFn& g, VectorRef x,
                              double delta, const Matrix& points,
                              const std::function<double(VectorRef)>& proposal_logpdf);

}  // namespace lapx

#endif  // LAPX_LAPLACE_HPP_
