#ifndef LAPX_QUADRATURE_HPP_
#define LAPX_QUADRATURE_HPP_

#include "lapx/core.hpp"

#include <functional>

namespace lapx {

enum class QuadRule { kTrapezoid, kSimpson };

/// Tensor-grid quadrature settings for d = 1 or 2.
///
/// points_per_dim counts subintervals per axis (the grid has
/// points_per_dim + 1 nodes per axis) and doubles on every refinement.
/// When points_per_dim already equals max_points_per_dim the grid is used
/// as-is with no refinement.
struct QuadConfig {
  DomainBox domain;
  long points_per_dim = 64;
  QuadRule rule = QuadRule::kSimpson;
  long max_points_per_dim = 0;  // 0: 2^20 in d = 1, 2^11 in d = 2
  double tolerance = 1e-9;      // max-norm change between refinements
  double min_grid_ess = 3.0;    // below this the peak is not resolved yet
};

struct QuadResult {
  Vector value;
  long points_per_dim = 0;
  double grid_ess = 0.0;  // (sum c_j e_j)^2 / sum (c_j e_j)^2
  double phi_min = 0.0;
};

class QuadratureNotConverged : public std::runtime_error {
 public:
  QuadratureNotConverged(const std::string& what, Vector previous, Vector last)
      : std::runtime_error(what), previous_(std::move(previous)), last_(std::move(last)) {}
  const Vector& previous() const { return previous_; }
  const Vector& last() const { return last_; }

 private:
  Vector previous_;
  Vector last_;
};

/// int h exp(-phi/delta) / int exp(-phi/delta) over cfg.domain.
///
/// Integrands are shifted by the grid minimum of phi before
/// exponentiation. phi may be +inf (zero weight). Refines until successive
/// results agree to cfg.tolerance; throws QuadratureNotConverged carrying
/// the last two results if the cap is reached first.
QuadResult quad_self_normalized_report(const ObjectiveFn& phi,
                                       const std::function<Vector(VectorRef)>& h,
                                       double delta, const QuadConfig& cfg);

Vector quad_self_normalized(const ObjectiveFn& phi, const std::function<Vector(VectorRef)>& h,
                            double delta, const QuadConfig& cfg);

/// The exact ratio with phi(y) = f(y) + g(x - y) and h = identity.
Vector quad_infconv_argmin(const ObjectiveFn& f, const ObjectiveFn& g, VectorRef x,
                           double delta, const QuadConfig& cfg);

/// h(y) = y.
Vector identity_map(VectorRef y);

}  // namespace lapx

#endif  // LAPX_QUADRATURE_HPP_
