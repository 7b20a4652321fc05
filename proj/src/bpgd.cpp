#include "lapx/bpgd.hpp"

#include "lapx/laplace.hpp"
#include "lapx/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <vector>

namespace lapx {

void PoissonProblem::validate() const {
  if (A.rows() == 0 || A.cols() == 0) throw ConfigError("poisson: A must be non-empty");
  if (b.size() != A.rows()) throw ConfigError("poisson: b must have one entry per row of A");
  if (!(A.array() > 0.0).all()) throw ConfigError("poisson: A must have strictly positive entries");
  if (!(b.array() >= 0.0).all()) throw ConfigError("poisson: b must be nonnegative");
  if (!(mu >= 0.0)) throw ConfigError("poisson: mu must be nonnegative");
  if (!(L > 0.0) || L < b.sum()) throw ConfigError("poisson: L must be positive and at least ||b||_1");
}

Conditioning parse_conditioning(const std::string& name) {
  if (name == "well") return Conditioning::kWell;
  if (name == "ill") return Conditioning::kIll;
  throw ConfigError("unknown conditioning '" + name + "' (expected well or ill)");
}

std::string conditioning_name(Conditioning c) { return c == Conditioning::kWell ? "well" : "ill"; }

GeneratedProblem gen_poisson_problem(int n, int d, const RngStream& rng, Conditioning c) {
  if (n < 1 || d < 1) throw ConfigError("gen_poisson_problem: n and d must be positive");
  if (c == Conditioning::kIll && n != d)
    throw ConfigError("gen_poisson_problem: the rank-one instance needs n == d");

  RngStream matrix_rng = rng.child(0);
  GeneratedProblem out;
  PoissonProblem& prob = out.problem;
  prob.A.resize(n, d);
  if (c == Conditioning::kWell) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < d; ++j) prob.A(i, j) = matrix_rng.uniform(1.0, 2.0);
  } else {
    Vector a(d);
    for (int j = 0; j < d; ++j) a[j] = std::max(matrix_rng.uniform(), 1e-6);
    prob.A = a * a.transpose();
  }

  RngStream truth_rng = rng.child(1);
  out.x_true.resize(d);
  for (int j = 0; j < d; ++j) out.x_true[j] = truth_rng.uniform(5.0, 6.0);
  int zeros = d / 2;
  if (d % 2 == 1 && truth_rng.below(2) == 1) ++zeros;
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  for (int j = d - 1; j > 0; --j)
    std::swap(order[j], order[truth_rng.below(static_cast<std::uint64_t>(j) + 1)]);
  for (int j = 0; j < zeros; ++j) out.x_true[order[j]] = 0.0;

  RngStream count_rng = rng.child(2);
  const Vector means = prob.A * out.x_true;
  prob.b.resize(n);
  for (int i = 0; i < n; ++i) prob.b[i] = static_cast<double>(count_rng.poisson(means[i]));
  prob.mu = 1e-3;
  // L must be positive even when every count is zero
  prob.L = prob.b.sum() > 0.0 ? prob.b.sum() : 1.0;
  return out;
}

namespace {

Vector forward(const PoissonProblem& prob, VectorRef x) {
  if (x.size() != prob.A.cols()) throw DomainError("poisson: x has wrong dimension");
  Vector ax = prob.A * x;
  for (Eigen::Index i = 0; i < ax.size(); ++i)
    if (!(ax[i] > 0.0)) throw DomainError("poisson: (Ax)_i must be positive");
  return ax;
}

}  // namespace

double bregman_d(const PoissonProblem& prob, VectorRef x) {
  const Vector ax = forward(prob, x);
  double total = 0.0;
  for (Eigen::Index i = 0; i < ax.size(); ++i) {
    const double bi = prob.b[i];
    if (bi > 0.0) total += bi * std::log(bi / ax[i]);
    total += ax[i] - bi;
  }
  return total;
}

Vector grad_d(const PoissonProblem& prob, VectorRef x) {
  const Vector ax = forward(prob, x);
  const Vector r = (1.0 - prob.b.array() / ax.array()).matrix();
  return prob.A.transpose() * r;
}

double criterion(const PoissonProblem& prob, VectorRef x) {
  return bregman_d(prob, x) + prob.mu * x.lpNorm<1>();
}

double burg_divergence(double y, double z) { return -std::log(y / z) + (y - z) / z; }

double variable_metric_divergence(const Matrix& A, VectorRef y, VectorRef z) {
  const Vector ay = A * y;
  const Vector az = A * z;
  double total = 0.0;
  for (Eigen::Index i = 0; i < ay.size(); ++i) {
    if (!(ay[i] > 0.0)) return kInf;
    total += burg_divergence(ay[i], az[i]);
  }
  return total;
}

double burg_subproblem(double mu, double g, double eta, double y, double z) {
  if (!(y > 0.0)) return kInf;
  return mu * y + g * y + burg_divergence(y, z) / eta;
}

void BPGDConfig::validate(const PoissonProblem& prob) const {
  prob.validate();
  if (!(eta > 0.0)) throw ConfigError("bpgd.eta: must be positive");
  if (!(eta * prob.L < 1.0))
    throw ConfigError("bpgd.eta: step-size constraint eta * L < 1 violated (eta * L = " +
                      std::to_string(eta * prob.L) + ")");
  if (!(delta > 0.0)) throw ConfigError("bpgd.delta: must be positive");
  if (n_samples == 0) throw ConfigError("bpgd.n_samples: must be at least 1");
  if (!(variable_metric_cap > 1e-6)) throw ConfigError("bpgd.cap: must exceed 1e-6");
  validate_proposal(coordinate_proposal);
  if (proposal_dim(coordinate_proposal) != 1)
    throw ConfigError("bpgd.proposal: coordinate proposal must be one-dimensional");
  if (std::holds_alternative<UniformBoxProposal>(coordinate_proposal)) {
    if (!(std::get<UniformBoxProposal>(coordinate_proposal).box.lo[0] > 0.0))
      throw ConfigError("bpgd.proposal: uniform proposal must lie in (0, inf)");
  } else if (!std::holds_alternative<ExponentialOrthantProposal>(coordinate_proposal)) {
    throw ConfigError("bpgd.proposal: must be uniform or exponential");
  }
  if (x0.size() != 0) {
    if (x0.size() != prob.dim()) throw ConfigError("bpgd.x0: wrong dimension");
    if (!(x0.array() > 0.0).all()) throw ConfigError("bpgd.x0: must be strictly positive");
  }
}

Vector BPGDConfig::start(int dim) const { return x0.size() == 0 ? Vector::Ones(dim) : x0; }

Vector bpgd_exact_step(const PoissonProblem& prob, VectorRef x_prev, const BPGDConfig& cfg) {
  const Vector g = grad_d(prob, x_prev);
  Vector x(x_prev.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double denom = 1.0 + cfg.eta * (prob.mu + g[i]) * x_prev[i];
    if (!(denom > 0.0))
      throw DomainError("bpgd: step-size error, eta too large for this iterate (coordinate " +
                        std::to_string(i) + ")");
    x[i] = x_prev[i] / denom;
  }
  return x;
}

Vector bpgd_laplace_step(const PoissonProblem& prob, VectorRef x_prev, const BPGDConfig& cfg,
                         const RngStream& rng) {
  if (!(x_prev.array() > 0.0).all()) throw DomainError("bpgd: iterate must be strictly positive");
  const Vector g = grad_d(prob, x_prev);
  Vector x(x_prev.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    SampleBatch batch;
    batch.points = sample(cfg.coordinate_proposal, cfg.n_samples, rng.child(i));
    batch.logw.resize(batch.points.cols());
    const auto n = static_cast<std::size_t>(batch.points.cols());
    parallel_for(num_chunks(n), [&](std::size_t c) {
      const std::size_t end = std::min(n, (c + 1) * kChunkSize);
      Vector y(1);
      for (std::size_t j = c * kChunkSize; j < end; ++j) {
        y[0] = batch.points(0, static_cast<Eigen::Index>(j));
        const double phi = burg_subproblem(prob.mu, g[i], cfg.eta, y[0], x_prev[i]);
        batch.logw[j] = phi == kInf ? -kInf : -phi / cfg.delta - logpdf(cfg.coordinate_proposal, y);
      }
    });
    try {
      x[i] = self_normalized_mean(batch).point[0];
    } catch (const DegenerateWeights& e) {
      throw DegenerateWeights("coordinate " + std::to_string(i) + ": " + e.what(), 0);
    }
  }
  return x;
}

Vector bpgd_variable_metric_step(const PoissonProblem& prob, VectorRef x_prev,
                                 const BPGDConfig& cfg, const RngStream& rng) {
  if (!(x_prev.array() > 0.0).all()) throw DomainError("bpgd: iterate must be strictly positive");
  const int d = prob.dim();
  const Vector g = grad_d(prob, x_prev);
  const Vector az = prob.A * x_prev;
  ProposalSpec proposal;
  if (prob.mu > 0.0)
    proposal = ExponentialOrthantProposal{Vector::Constant(d, prob.mu / cfg.delta),
                                          cfg.variable_metric_cap};
  else
    proposal = UniformBoxProposal{DomainBox::cube(d, 1e-6, cfg.variable_metric_cap)};

  SampleBatch batch;
  batch.points = sample(proposal, cfg.n_samples, rng);
  batch.logw.resize(batch.points.cols());
  const auto n = static_cast<std::size_t>(batch.points.cols());
  parallel_for(num_chunks(n), [&](std::size_t c) {
    const std::size_t end = std::min(n, (c + 1) * kChunkSize);
    Vector ay(prob.A.rows());
    for (std::size_t j = c * kChunkSize; j < end; ++j) {
      const auto y = batch.points.col(static_cast<Eigen::Index>(j));
      ay.noalias() = prob.A * y;
      double div = 0.0;
      for (Eigen::Index r = 0; r < ay.size(); ++r) {
        if (!(ay[r] > 0.0)) {
          div = kInf;
          break;
        }
        div += burg_divergence(ay[r], az[r]);
      }
      if (div == kInf) {
        batch.logw[j] = -kInf;
        continue;
      }
      const double phi = prob.mu * y.lpNorm<1>() + g.dot(y) + div / cfg.eta;
      batch.logw[j] = -phi / cfg.delta - logpdf(proposal, y);
    }
  });
  return self_normalized_mean(batch).point;
}

BPGDVariant parse_bpgd_variant(const std::string& name) {
  if (name == "exact") return BPGDVariant::kExact;
  if (name == "laplace_burg") return BPGDVariant::kLaplaceBurg;
  if (name == "laplace_varmetric") return BPGDVariant::kLaplaceVariableMetric;
  throw ConfigError("unknown bpgd variant '" + name +
                    "' (expected exact, laplace_burg or laplace_varmetric)");
}

std::string bpgd_variant_name(BPGDVariant v) {
  switch (v) {
    case BPGDVariant::kExact: return "exact";
    case BPGDVariant::kLaplaceBurg: return "laplace_burg";
    case BPGDVariant::kLaplaceVariableMetric: return "laplace_varmetric";
  }
  return "unknown";
}

OptTrace bpgd_run(const PoissonProblem& prob, const BPGDConfig& cfg, BPGDVariant variant,
                  std::size_t iters, const RngStream& rng) {
  cfg.validate(prob);
  const auto start = std::chrono::steady_clock::now();
  OptTrace trace;
  trace.seed = rng;
  Vector x = cfg.start(prob.dim());
  std::uint64_t evals = 0;
  trace.iterates.push_back(x);
  trace.values.push_back(criterion(prob, x));
  trace.evals.push_back(evals);
  for (std::size_t k = 1; k <= iters; ++k) {
    try {
      switch (variant) {
        case BPGDVariant::kExact:
          x = bpgd_exact_step(prob, x, cfg);
          break;
        case BPGDVariant::kLaplaceBurg:
          x = bpgd_laplace_step(prob, x, cfg, rng.child(k));
          evals += cfg.n_samples * static_cast<std::uint64_t>(prob.dim());
          break;
        case BPGDVariant::kLaplaceVariableMetric:
          x = bpgd_variable_metric_step(prob, x, cfg, rng.child(k));
          evals += cfg.n_samples;
          break;
      }
    } catch (const DegenerateWeights& e) {
      trace.status = TraceStatus::kDegenerate;
      trace.message = std::string(e.what()) + " at iteration " + std::to_string(k);
      break;
    } catch (const DomainError& e) {
      trace.status = TraceStatus::kStepSize;
      trace.message = std::string(e.what()) + " at iteration " + std::to_string(k);
      break;
    }
    trace.iterates.push_back(x);
    trace.values.push_back(criterion(prob, x));
    trace.evals.push_back(evals);
  }
  trace.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return trace;
}

}  // namespace lapx
