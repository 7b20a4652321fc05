#include "lapx/quadrature.hpp"

#include "lapx/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace lapx {

Vector identity_map(VectorRef y) { return y; }

namespace {

double rule_weight(QuadRule rule, long j, long n) {
  if (rule == QuadRule::kTrapezoid) return (j == 0 || j == n) ? 0.5 : 1.0;
  if (j == 0 || j == n) return 1.0 / 3.0;
  return (j % 2 == 1) ? 4.0 / 3.0 : 2.0 / 3.0;
}

struct Level {
  Vector value;
  double grid_ess;
  double phi_min;
};

Level evaluate_level(const ObjectiveFn& phi, const std::function<Vector(VectorRef)>& h,
                     double delta, const QuadConfig& cfg, long n) {
  const int d = cfg.domain.dim();
  const long nodes_per_axis = n + 1;
  const std::size_t total = static_cast<std::size_t>(d == 1 ? nodes_per_axis : nodes_per_axis * nodes_per_axis);
  const Vector step = (cfg.domain.hi - cfg.domain.lo) / static_cast<double>(n);

  auto node = [&](std::size_t k, Vector& y, double& c) {
    const long j0 = static_cast<long>(k % static_cast<std::size_t>(nodes_per_axis));
    y[0] = j0 == n ? cfg.domain.hi[0] : cfg.domain.lo[0] + static_cast<double>(j0) * step[0];
    c = rule_weight(cfg.rule, j0, n);
    if (d == 2) {
      const long j1 = static_cast<long>(k / static_cast<std::size_t>(nodes_per_axis));
      y[1] = j1 == n ? cfg.domain.hi[1] : cfg.domain.lo[1] + static_cast<double>(j1) * step[1];
      c *= rule_weight(cfg.rule, j1, n);
    }
  };

  std::vector<double> values(total);
  parallel_for(num_chunks(total), [&](std::size_t c) {
    Vector y(d);
    double weight;
    const std::size_t end = std::min(total, (c + 1) * kChunkSize);
    for (std::size_t k = c * kChunkSize; k < end; ++k) {
      node(k, y, weight);
      const double v = phi.eval(y);
      if (std::isnan(v)) throw DomainError("quadrature: phi returned NaN");
      values[k] = v;
    }
  });

  double phi_min = kInf;
  for (double v : values) phi_min = std::min(phi_min, v);
  if (!std::isfinite(phi_min))
    throw DegenerateWeights("phi is +inf on every quadrature node", 0);

  // Per-chunk partial sums, combined in chunk order.
  const std::size_t chunks = num_chunks(total);
  const Eigen::Index out_dim = [&] {
    Vector y(d);
    double weight;
    node(0, y, weight);
    return h(y).size();
  }();
  std::vector<Vector> num(chunks, Vector::Zero(out_dim));
  std::vector<double> den(chunks, 0.0), den_sq(chunks, 0.0);
  parallel_for(chunks, [&](std::size_t c) {
    Vector y(d);
    double weight;
    const std::size_t end = std::min(total, (c + 1) * kChunkSize);
    for (std::size_t k = c * kChunkSize; k < end; ++k) {
      if (values[k] == kInf) continue;
      const double e = std::exp((phi_min - values[k]) / delta);
      if (e == 0.0) continue;
      node(k, y, weight);
      const double ce = weight * e;
      num[c] += ce * h(y);
      den[c] += ce;
      den_sq[c] += ce * ce;
    }
  });

  Vector numerator = Vector::Zero(out_dim);
  double denominator = 0.0, denominator_sq = 0.0;
  for (std::size_t c = 0; c < chunks; ++c) {
    numerator += num[c];
    denominator += den[c];
    denominator_sq += den_sq[c];
  }
  return {numerator / denominator, denominator * denominator / denominator_sq, phi_min};
}

}  // namespace

QuadResult quad_self_normalized_report(const ObjectiveFn& phi,
                                       const std::function<Vector(VectorRef)>& h,
                                       double delta, const QuadConfig& cfg) {
  const int d = cfg.domain.dim();
  if (d != 1 && d != 2) throw ConfigError("quadrature: domain must have dimension 1 or 2");
  if (phi.dim() != d) throw ConfigError("quadrature: phi dimension does not match domain");
  if (!(delta > 0.0)) throw ConfigError("quadrature: delta must be positive");
  if (cfg.points_per_dim < 64) throw ConfigError("quadrature: points_per_dim must be >= 64");
  if (cfg.rule == QuadRule::kSimpson && cfg.points_per_dim % 2 != 0)
    throw ConfigError("quadrature: simpson rule needs an even points_per_dim");

  const long cap = cfg.max_points_per_dim > 0 ? cfg.max_points_per_dim
                                              : (d == 1 ? (1L << 20) : (1L << 11));
  long n = cfg.points_per_dim;
  Level level = evaluate_level(phi, h, delta, cfg, n);
  if (n >= cap) return {level.value, n, level.grid_ess, level.phi_min};

  for (;;) {
    const long next_n = n * 2;
    Level next = evaluate_level(phi, h, delta, cfg, next_n);
    const double change = (next.value - level.value).cwiseAbs().maxCoeff();
    const bool last = next_n * 2 > cap;
    if (change < cfg.tolerance && (next.grid_ess >= cfg.min_grid_ess || last))
      return {next.value, next_n, next.grid_ess, next.phi_min};
    if (last) {
      throw QuadratureNotConverged(
          "quadrature did not converge by " + std::to_string(next_n) +
              " points per dimension (last change " + std::to_string(change) + ")",
          level.value, next.value);
    }
    level = std::move(next);
    n = next_n;
  }
}

Vector quad_self_normalized(const ObjectiveFn& phi, const std::function<Vector(VectorRef)>& h,
                            double delta, const QuadConfig& cfg) {
  return quad_self_normalized_report(phi, h, delta, cfg).value;
}

Vector quad_infconv_argmin(const ObjectiveFn& f, const ObjectiveFn& g, VectorRef x,
                           double delta, const QuadConfig& cfg) {
  const Vector x0 = x;
  ObjectiveFn phi(
      [&f, &g, x0](VectorRef y) {
        const double fy = f.eval(y);
        if (fy == kInf) return kInf;
        return fy + g.eval(x0 - y);
      },
      f.dim());
  return quad_self_normalized(phi, identity_map, delta, cfg);
}

}  // namespace lapx
