#ifndef LAPX_OPTIMIZERS_HPP_
#define LAPX_OPTIMIZERS_HPP_

#include "lapx/core.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace lapx {

/// lpp: Laplace proximal point. rgf: random gradient-free oracle.
/// gd: (optionally noisy) gradient descent with an analytic gradient.
enum class Algorithm { kLpp, kRgf, kGd };

std::string algorithm_name(Algorithm a);
Algorithm parse_algorithm(const std::string& name);

struct OptConfig {
  std::size_t max_iters = 100;
  double lambda = 1.0;
  double delta = 1e-2;
  std::size_t n_samples = 1000;
  double eta = 1e-2;
  double noise_sd = 0.0;
  Vector x0;

  void validate(Algorithm algorithm) const;
};

enum class TraceStatus { kCompleted, kDegenerate, kDiverged, kStepSize };

/// Iterate history. Index 0 holds x0; evals[k] is the cumulative number of
/// objective (or gradient) evaluations spent by the algorithm up to x_k.
struct OptTrace {
  std::vector<Vector> iterates;
  std::vector<double> values;
  std::vector<std::uint64_t> evals;
  RngStream seed;
  TraceStatus status = TraceStatus::kCompleted;
  std::string message;
  double wall_seconds = 0.0;

  std::size_t size() const { return values.size(); }
  /// Final value, or +inf if the run aborted.
  double selection_value() const;
};

/// One Laplace proximal point update: the softmax(-f/delta) average of
/// N draws from N(x_prev, delta lambda I).
Vector lpp_step(const ObjectiveFn& f, VectorRef x_prev, const OptConfig& cfg,
                const RngStream& rng);

struct GradientEstimate {
  Vector mean;
  Vector std_error;
};

/// Gaussian-smoothing gradient estimate
///   (1/N) sum_i (f(Y_i) - f(x)) / delta * (Y_i - x),  Y_i ~ N(x, delta I).
/// fx is f(x), passed in so the caller controls evaluation accounting.
GradientEstimate rgf_gradient(const ObjectiveFn& f, VectorRef x, double fx, double delta,
                              std::size_t n_samples, const RngStream& rng);

/// x_prev - eta * rgf_gradient(...). Costs N + 1 evaluations.
Vector rgf_step(const ObjectiveFn& f, VectorRef x_prev, const OptConfig& cfg,
                const RngStream& rng);

using GradientFn = std::function<Vector(VectorRef)>;

/// x_k = x_{k-1} - eta (grad f(x_{k-1}) + xi_k), xi_k ~ N(0, noise_sd^2 I).
/// Aborts with status kDiverged once ||x_k|| exceeds 1e8.
OptTrace gd_run(const ObjectiveFn& f, const GradientFn& grad, const OptConfig& cfg,
                const RngStream& rng);

/// Runs cfg.max_iters iterations. Iteration k draws from rng.child(k).
/// grad is required for kGd only.
OptTrace run(Algorithm algorithm, const ObjectiveFn& f, const OptConfig& cfg,
             const RngStream& rng, const GradientFn& grad = {});

/// Repetition r uses rng.child(r); returns one trace per repetition.
std::vector<OptTrace> run_repeated(Algorithm algorithm, const ObjectiveFn& f,
                                   const OptConfig& cfg, std::size_t reps,
                                   const RngStream& rng, const GradientFn& grad = {});

/// Per-iteration mean of values and evals. Shorter (aborted) traces are
/// padded with +inf values.
OptTrace average_traces(const std::vector<OptTrace>& traces);

/// Candidate values for tuning. Only the lists relevant to the algorithm
/// are used (lpp: deltas x n_samples; rgf: deltas x etas x n_samples;
/// gd: etas x noise_sds); an empty relevant list falls back to the base
/// config's value.
struct TuneGrid {
  std::vector<double> deltas;
  std::vector<double> etas;
  std::vector<double> noise_sds;
  std::vector<std::size_t> n_samples;
};

std::vector<OptConfig> expand_grid(Algorithm algorithm, const OptConfig& base,
                                   const TuneGrid& grid);

struct TuneResult {
  OptTrace best;  // averaged over repetitions
  OptConfig best_config;
  std::vector<OptConfig> candidates;
  std::vector<double> final_values;
};

/// Runs every candidate for budget_iters iterations (reps repetitions,
/// averaged) and keeps the smallest final value; ties go to the earlier
/// candidate. Every candidate sees the same random streams. Throws
/// ConfigError when the grid has no relevant entries.
TuneResult tune_grid(Algorithm algorithm, const ObjectiveFn& f, const OptConfig& base,
                     const TuneGrid& grid, std::size_t budget_iters, const RngStream& rng,
                     std::size_t reps = 1, const GradientFn& grad = {});

}  // namespace lapx

#endif  // LAPX_OPTIMIZERS_HPP_
