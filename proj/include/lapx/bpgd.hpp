#ifndef LAPX_BPGD_HPP_
#define LAPX_BPGD_HPP_

#include "lapx/optimizers.hpp"
#include "lapx/samplers.hpp"

#include <string>

namespace lapx {

/// Regularized Poisson linear inverse problem
///   minimize d(x) + mu ||x||_1 over x >= 0,
///   d(x) = sum_i b_i log(b_i / (Ax)_i) - b_i + (Ax)_i,
/// the generalized KL divergence of Ax from b.
struct PoissonProblem {
  Matrix A;
  Vector b;
  double mu = 1e-3;
  double L = 1.0;  // majorization constant, at least ||b||_1

  int dim() const { return static_cast<int>(A.cols()); }
  void validate() const;
};

enum class Conditioning { kWell, kIll };

Conditioning parse_conditioning(const std::string& name);
std::string conditioning_name(Conditioning c);

struct GeneratedProblem {
  PoissonProblem problem;
  Vector x_true;
};

/// well: A_ij ~ U[1, 2]. ill: A = a a^T with a_i ~ U[0, 1] clipped below at
/// 1e-6 (requires n == d). x_true_i ~ U[5, 6] with a random half zeroed,
/// b_i ~ Poisson((A x_true)_i), mu = 1e-3, L = ||b||_1.
GeneratedProblem gen_poisson_problem(int n, int d, const RngStream& rng, Conditioning c);

/// d(x) with 0 log 0 = 0. Throws DomainError when some (Ax)_i <= 0.
double bregman_d(const PoissonProblem& prob, VectorRef x);
/// A^T (1 - b / Ax).
Vector grad_d(const PoissonProblem& prob, VectorRef x);
/// d(x) + mu ||x||_1.
double criterion(const PoissonProblem& prob, VectorRef x);

/// Burg entropy divergence in one coordinate: -log(y/z) + (y - z)/z.
double burg_divergence(double y, double z);
/// Divergence of h(x) = -sum_i log (Ax)_i.
double variable_metric_divergence(const Matrix& A, VectorRef y, VectorRef z);

struct BPGDConfig {
  double eta = 1e-5;
  double delta = 2e-3;
  std::size_t n_samples = 50000;
  /// One-dimensional proposal used for every coordinate of the Burg step:
  /// a UniformBoxProposal or an ExponentialOrthantProposal of dimension 1.
  ProposalSpec coordinate_proposal = UniformBoxProposal{DomainBox::cube(1, 1e-6, 50.0)};
  double variable_metric_cap = 50.0;
  Vector x0;  // empty means all ones

  /// Checks eta * L < 1 against prob as well as the sampling parameters.
  void validate(const PoissonProblem& prob) const;
  Vector start(int dim) const;
};

/// Closed-form Burg update x_i / (1 + eta (mu + grad_i d(x)) x_i). Throws
/// DomainError if a denominator is not positive.
Vector bpgd_exact_step(const PoissonProblem& prob, VectorRef x_prev, const BPGDConfig& cfg);

/// Per-coordinate Laplace estimate of the Burg update, coordinate i drawing
/// from rng.child(i).
Vector bpgd_laplace_step(const PoissonProblem& prob, VectorRef x_prev, const BPGDConfig& cfg,
                         const RngStream& rng);

/// Full-dimensional Laplace estimate of the update with the variable-metric
/// majorizer. The proposal is exponential with rate mu / delta per
/// coordinate, truncated at cfg.variable_metric_cap; with mu = 0 it falls
/// back to a uniform box [1e-6, cap]^d.
Vector bpgd_variable_metric_step(const PoissonProblem& prob, VectorRef x_prev,
                                 const BPGDConfig& cfg, const RngStream& rng);

/// Subproblem objective mu y + g y + burg_divergence(y, z) / eta for one
/// coordinate with gradient entry g.
double burg_subproblem(double mu, double g, double eta, double y, double z);

enum class BPGDVariant { kExact, kLaplaceBurg, kLaplaceVariableMetric };

BPGDVariant parse_bpgd_variant(const std::string& name);
std::string bpgd_variant_name(BPGDVariant v);

/// values[k] = criterion(x_k). Iteration k draws from rng.child(k). Errors
/// stop the run and are reported through status/message with the trace so
/// far. evals counts drawn samples.
OptTrace bpgd_run(const PoissonProblem& prob, const BPGDConfig& cfg, BPGDVariant variant,
                  std::size_t iters, const RngStream& rng);

}  // namespace lapx

#endif  // LAPX_BPGD_HPP_
