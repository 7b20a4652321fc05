#include "lapx/laplace.hpp"

#include "lapx/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lapx {

double finite_max(const Vector& v) {
  double a = -kInf;
  bool any = false;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::isnan(v[i])) throw DomainError("softmax: NaN exponent at index " + std::to_string(i));
    if (v[i] == kInf) throw DomainError("softmax: +inf exponent at index " + std::to_string(i));
    if (v[i] > -kInf) {
      any = true;
      if (v[i] > a) a = v[i];
    }
  }
  if (!any) throw DegenerateWeights("every sample has infinite objective", 0);
  return a;
}

Vector stable_softmax(const Vector& v) {
  const double a = finite_max(v);
  Vector w(v.size());
  double total = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    w[i] = v[i] == -kInf ? 0.0 : std::exp(v[i] - a);
    total += w[i];
  }
  return w / total;
}

namespace {

LaplaceEstimate weighted_mean(const Vector& logw, Eigen::Index n, int out_dim,
                              const std::function<void(Eigen::Index, Vector&)>& value_at) {
  if (n == 0 || logw.size() != n) throw DomainError("self_normalized_mean: empty or mismatched batch");
  LaplaceEstimate est;
  est.max_logw = finite_max(logw);
  const Vector w = stable_softmax(logw);

  Vector mean = Vector::Zero(out_dim);
  Vector value(out_dim);
  double sum_sq = 0.0;
  Eigen::Index retained = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (w[i] == 0.0) continue;
    ++retained;
    value_at(i, value);
    mean += w[i] * value;
    sum_sq += w[i] * w[i];
  }

  Vector var = Vector::Zero(out_dim);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (w[i] == 0.0) continue;
    value_at(i, value);
    var += (w[i] * w[i]) * (value - mean).cwiseAbs2();
  }

  est.point = std::move(mean);
  est.ess = 1.0 / sum_sq;
  est.retained = retained;
  est.std_error = var.cwiseSqrt();
  return est;
}

}  // namespace

LaplaceEstimate self_normalized_mean(const SampleBatch& batch) {
  return weighted_mean(batch.logw, batch.size(), batch.dim(),
                       [&](Eigen::Index i, Vector& out) { out = batch.points.col(i); });
}

LaplaceEstimate self_normalized_mean(const SampleBatch& batch,
                                     const std::function<Vector(VectorRef)>& h) {
  if (batch.size() == 0) throw DomainError("self_normalized_mean: empty batch");
  const Eigen::Index out_dim = h(batch.points.col(0)).size();
  return weighted_mean(batch.logw, batch.size(), static_cast<int>(out_dim),
                       [&](Eigen::Index i, Vector& out) { out = h(batch.points.col(i)); });
}

Vector evaluate_batch(const ObjectiveFn& f, const Matrix& points) {
  const auto n = static_cast<std::size_t>(points.cols());
  Vector out(points.cols());
  parallel_for(num_chunks(n), [&](std::size_t c) {
    const std::size_t end = std::min(n, (c + 1) * kChunkSize);
    for (std::size_t i = c * kChunkSize; i < end; ++i) out[i] = f.eval(points.col(i));
  });
  return out;
}

Vector importance_log_weights(const ObjectiveFn& f, const ObjectiveFn& g, VectorRef x,
                              double delta, const Matrix& points,
                              const std::function<double(VectorRef)>& proposal_logpdf) {
  if (!(delta > 0.0)) throw ConfigError("importance_log_weights: delta must be positive");
  const auto n = static_cast<std::size_t>(points.cols());
  Vector logw(points.cols());
  parallel_for(num_chunks(n), [&](std::size_t c) {
    const std::size_t end = std::min(n, (c + 1) * kChunkSize);
    Vector shifted(points.rows());
    for (std::size_t i = c * kChunkSize; i < end; ++i) {
      const auto y = points.col(i);
      const double logq = proposal_logpdf(y);
      if (!std::isfinite(logq))
        throw ProposalSupportError("proposal support violation at sample " + std::to_string(i));
      shifted = x - y;
      const double fy = f.eval(y);
      const double gy = g.eval(shifted);
      if (std::isnan(fy) || std::isnan(gy))
        throw DomainError("importance_log_weights: objective returned NaN at sample " +
                          std::to_string(i));
      const double total = fy + gy;
      logw[i] = total == kInf ? -kInf : -total / delta - logq;
    }
  });
  return logw;
}

}  // namespace lapx
