#ifndef LAPX_PROX_HPP_
#define LAPX_PROX_HPP_

#include "lapx/laplace.hpp"
#include "lapx/samplers.hpp"

#include <functional>

namespace lapx {

struct ProxConfig {
  double lambda = 1.0;      // Moreau level
  double delta = 1e-2;      // Laplace temperature
  std::size_t n_samples = 1000;
  RngStream rng;

  void validate() const;
};

/// A set K given by its membership test. bounding_box is advisory.
struct SetIndicator {
  std::function<bool(VectorRef)> contains;
  DomainBox bounding_box;

  /// I_K: 0 inside, +inf outside.
  ObjectiveFn characteristic(int dim) const;
};

/// Approximates prox_{lambda f}(x): draws Y_i ~ N(x, delta lambda I) and
/// returns the softmax(-f(Y_i)/delta)-weighted average of the draws.
LaplaceEstimate prox_laplace(const ObjectiveFn& f, VectorRef x, const ProxConfig& cfg);

/// f(y) + ||x - y||^2 / (2 lambda) at y = prox_laplace(f, x, cfg).point.
double moreau_envelope_estimate(const ObjectiveFn& f, VectorRef x, const ProxConfig& cfg);

/// Smoothed projection E[Y | Y in K], Y ~ N(x, delta I), by rejection:
/// members get weight 1, everything else weight 0. The estimate is a
/// convex combination of members of K. Throws DegenerateWeights when no
/// draw lands in K.
LaplaceEstimate project_laplace(const SetIndicator& K, VectorRef x, double delta,
                                std::size_t n_samples, const RngStream& rng);

/// Importance-sampled estimate of argmin_y f(y) + g(x - y) with draws from
/// an arbitrary proposal. When the argmin is not unique the weighted
/// barycenter of the near-optimal draws is returned; only the value
/// f(y) + g(x - y) at the estimate is meaningful in that case.
LaplaceEstimate infconv_argmin(const ObjectiveFn& f, const ObjectiveFn& g, VectorRef x,
                               double delta, const ProposalSpec& proposal,
                               std::size_t n_samples, const RngStream& rng);

/// Closed forms used as test oracles and in the projection demo.
namespace exact {
Vector soft_threshold(VectorRef x, double lambda);
double huber_envelope(double x, double lambda);
Vector project_ball(VectorRef x, VectorRef center, double radius);
Vector project_orthant(VectorRef x);
}  // namespace exact

}  // namespace lapx

#endif  // LAPX_PROX_HPP_
