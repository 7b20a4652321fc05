#include "lapx/prox.hpp"

#include "lapx/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lapx {

void ProxConfig::validate() const {
  if (!(lambda > 0.0)) throw ConfigError("prox: lambda must be positive");
  if (!(delta > 0.0)) throw ConfigError("prox: delta must be positive");
  if (n_samples == 0) throw ConfigError("prox: n_samples must be at least 1");
}

ObjectiveFn SetIndicator::characteristic(int dim) const {
  auto member = contains;
  return ObjectiveFn([member](VectorRef y) { return member(y) ? 0.0 : kInf; }, dim);
}

LaplaceEstimate prox_laplace(const ObjectiveFn& f, VectorRef x, const ProxConfig& cfg) {
  cfg.validate();
  if (x.size() != f.dim()) throw ConfigError("prox_laplace: x has wrong dimension");
  SampleBatch batch;
  batch.points = sample(GaussianProposal{x, cfg.delta * cfg.lambda}, cfg.n_samples, cfg.rng);
  const Vector values = evaluate_batch(f, batch.points);
  batch.logw.resize(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (std::isnan(values[i])) throw DomainError("prox_laplace: objective returned NaN");
    batch.logw[i] = values[i] == kInf ? -kInf : -values[i] / cfg.delta;
  }
  return self_normalized_mean(batch);
}

double moreau_envelope_estimate(const ObjectiveFn& f, VectorRef x, const ProxConfig& cfg) {
  const Vector y = prox_laplace(f, x, cfg).point;
  return f.eval(y) + (x - y).squaredNorm() / (2.0 * cfg.lambda);
}

LaplaceEstimate project_laplace(const SetIndicator& K, VectorRef x, double delta,
                                std::size_t n_samples, const RngStream& rng) {
  if (!(delta > 0.0)) throw ConfigError("project_laplace: delta must be positive");
  if (n_samples == 0) throw ConfigError("project_laplace: n_samples must be at least 1");
  SampleBatch batch;
  batch.points = sample(GaussianProposal{x, delta}, n_samples, rng);
  batch.logw.resize(batch.points.cols());
  const auto n = static_cast<std::size_t>(batch.points.cols());
  parallel_for(num_chunks(n), [&](std::size_t c) {
    const std::size_t end = std::min(n, (c + 1) * kChunkSize);
    for (std::size_t i = c * kChunkSize; i < end; ++i)
      batch.logw[i] = K.contains(batch.points.col(i)) ? 0.0 : -kInf;
  });
  try {
    return self_normalized_mean(batch);
  } catch (const DegenerateWeights&) {
    throw DegenerateWeights("no draw landed in K (retained 0 of " + std::to_string(n) + ")", 0);
  }
}

LaplaceEstimate infconv_argmin(const ObjectiveFn& f, const ObjectiveFn& g, VectorRef x,
                               double delta, const ProposalSpec& proposal,
                               std::size_t n_samples, const RngStream& rng) {
  if (x.size() != f.dim() || proposal_dim(proposal) != f.dim())
    throw ConfigError("infconv_argmin: dimension mismatch between x, f and proposal");
  SampleBatch batch;
  batch.points = sample(proposal, n_samples, rng);
  batch.logw = importance_log_weights(f, g, x, delta, batch.points,
                                      [&](VectorRef y) { return logpdf(proposal, y); });
  return self_normalized_mean(batch);
}

namespace exact {

Vector soft_threshold(VectorRef x, double lambda) {
  Vector out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i)
    out[i] = std::copysign(std::max(std::abs(x[i]) - lambda, 0.0), x[i]);
  return out;
}

double huber_envelope(double x, double lambda) {
  const double a = std::abs(x);
  return a <= lambda ? a * a / (2.0 * lambda) : a - lambda / 2.0;
}

Vector project_ball(VectorRef x, VectorRef center, double radius) {
  const Vector diff = x - center;
  const double r = diff.norm();
  if (r <= radius) return x;
  return center + diff * (radius / r);
}

Vector project_orthant(VectorRef x) { return x.cwiseMax(0.0); }

}  // namespace exact

}  // namespace lapx
