#include "lapx/hj.hpp"

#include <doctest.h>

#include <cmath>

using namespace lapx;

namespace {

ObjectiveFn half_sq(int d) { return ObjectiveFn([](VectorRef y) { return 0.5 * y.squaredNorm(); }, d); }
ObjectiveFn l1(int d) { return ObjectiveFn([](VectorRef y) { return y.lpNorm<1>(); }, d); }

}  // namespace

TEST_CASE("conjugate_g") {
  const Eigen::Vector3d v(1.0, -2.0, 0.5);
  CHECK(conjugate_g(2.0, 1.0, v) == doctest::Approx(v.squaredNorm() / 2));
  CHECK(conjugate_g(2.0, 2.0, Eigen::Vector2d(2.0, 0.0)) == doctest::Approx(1.0));
  CHECK(conjugate_exponent(5.0) == doctest::Approx(1.25));
  CHECK(conjugate_exponent(1.1) == doctest::Approx(11.0));
  CHECK_THROWS_AS(conjugate_exponent(1.0), ConfigError);
  CHECK_THROWS_AS(conjugate_g(2.0, 0.0, v), DomainError);

  RngStream rng(1, 0);
  for (int i = 0; i < 100; ++i) {
    Vector w(4);
    for (auto& x : w) x = rng.uniform(-3.0, 3.0);
    const double t = rng.uniform(0.1, 5.0);
    CHECK(conjugate_g(2.0, t, w) == w.squaredNorm() / (2.0 * t));
  }
}

TEST_CASE("Fenchel-Young inequality and its equality case") {
  RngStream rng(2, 0);
  for (double p : {2.0, 5.0, 10.0}) {
    for (int i = 0; i < 200; ++i) {
      Vector v(3), w(3);
      for (auto& x : v) x = rng.uniform(-2.0, 2.0);
      for (auto& x : w) x = rng.uniform(-2.0, 2.0);
      CHECK(v.dot(w) <= hamiltonian(p, v) + conjugate_g(p, 1.0, w) + 1e-12);
      Vector dual(3);
      for (int j = 0; j < 3; ++j) dual[j] = std::copysign(std::pow(std::abs(v[j]), p - 1), v[j]);
      const double gap = hamiltonian(p, v) + conjugate_g(p, 1.0, dual) - v.dot(dual);
      CHECK(std::abs(gap) <= 1e-9 * std::max(1.0, std::abs(v.dot(dual))));
    }
  }
}

TEST_CASE("hj_solution for quadratic data") {
  // u(x, t) = |x|^2 / (2 (1 + t))
  HJConfig cfg = HJConfig::with_dim(2);
  cfg.delta = 1e-2;
  cfg.n_samples = 100000;
  for (std::uint64_t seed = 0; seed < 3; ++seed)
    CHECK(std::abs(hj_solution(half_sq(2), Eigen::Vector2d(1.0, 0.0), 1.0, cfg, RngStream(seed, 3)) -
                   0.25) < 0.01);
}

TEST_CASE("hj_solution for absolute value data is the Huber function") {
  HJConfig cfg = HJConfig::with_dim(1);
  cfg.delta = 1e-2;
  cfg.n_samples = 100000;
  const double u = hj_solution(l1(1), Vector::Constant(1, 3.0), 1.0, cfg, RngStream(4, 0));
  CHECK(std::abs(u - 2.5) < 0.02);
}

TEST_CASE("hj_solution flattens for large t") {
  HJConfig cfg = HJConfig::with_dim(2);
  cfg.t_hi = 1000.0;
  cfg.n_samples = 100000;
  const Eigen::Vector2d x(1.0, -1.0);
  // exact values are 1 at t = 1 and 0.01 at t = 100; the sample spacing
  // near the origin (about 0.06) bounds how close the estimate gets
  const double early = hj_solution(l1(2), x, 1.0, cfg, RngStream(5, 0));
  const double late = hj_solution(l1(2), x, 100.0, cfg, RngStream(5, 0));
  CHECK(std::abs(early - 1.0) < 0.02);
  CHECK(late >= 0.0);
  CHECK(late < 0.1);
}

TEST_CASE("residual of exact solutions") {
  const SolutionFn exact = [](VectorRef x, double t) { return x.squaredNorm() / (2.0 * (1.0 + t)); };
  RngStream rng(6, 0);
  for (int i = 0; i < 20; ++i) {
    const Eigen::Vector2d x(rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0));
    CHECK(hj_residual(exact, x, rng.uniform(0.2, 1.0), 2.0, 1e-4) <= 1e-6);
  }
  const SolutionFn constant = [](VectorRef, double) { return 3.0; };
  CHECK(hj_residual(constant, Eigen::Vector2d(1.0, 2.0), 0.5, 2.0, 1e-3) == 0.0);
  CHECK_THROWS_AS(hj_residual(exact, Eigen::Vector2d(1.0, 2.0), 0.5, 2.0, 0.0), ConfigError);
  CHECK_THROWS_AS(hj_residual(exact, Eigen::Vector2d(1.0, 2.0), 1e-4, 2.0, 1e-3), DomainError);
}

TEST_CASE("estimator residual is deterministic and small for quadratic data") {
  HJConfig cfg = HJConfig::with_dim(2);
  cfg.n_samples = 100000;
  cfg.delta = 1e-2;
  const Eigen::Vector2d x(0.7, -1.3);
  const double r1 = hj_residual(half_sq(2), x, 0.5, cfg, RngStream(7, 0));
  const double r2 = hj_residual(half_sq(2), x, 0.5, cfg, RngStream(7, 0));
  CHECK(r1 == r2);
  CHECK(r1 < 0.05);
}

TEST_CASE("HJSolver reuses its batch across stencil points") {
  HJConfig cfg = HJConfig::with_dim(1);
  cfg.n_samples = 50;
  const HJSolver solver(l1(1), cfg, RngStream(8, 0));
  const Vector x = Vector::Constant(1, 0.3);
  CHECK(solver.solve(x, 0.5) == solver.solve(x, 0.5));
  const LaplaceEstimate est = solver.argmin(x, 0.5, 1.0);
  CHECK(est.ess >= 1.0);
  CHECK(est.ess <= 50.0);
}

TEST_CASE("percentile") {
  CHECK(percentile({3.0, 1.0, 2.0}, 0.5) == 2.0);
  CHECK(percentile({0.0, 10.0}, 0.2) == doctest::Approx(2.0));
  CHECK(percentile({5.0}, 0.8) == 5.0);
  CHECK(std::isnan(percentile({}, 0.5)));
}

TEST_CASE("hj_sweep layout") {
  HJConfig cfg = HJConfig::with_dim(2);
  cfg.n_eval_points = 5;
  SUBCASE("single cell") {
    const HJSweepResult r = hj_sweep(l1(2), cfg, {1e-2}, {10}, 1, RngStream(9, 0));
    CHECK(r.rows.size() == 1);
    CHECK(r.pooled.size() == 1);
    CHECK(r.rows[0].median == r.pooled[0].median);
    CHECK(r.rows[0].missing_count + 5 >= 5);
  }
  SUBCASE("grid ordering and reproducibility") {
    const HJSweepResult a = hj_sweep(l1(2), cfg, {1e-2, 1e-1}, {10, 100}, 2, RngStream(9, 0));
    const HJSweepResult b = hj_sweep(l1(2), cfg, {1e-2, 1e-1}, {10, 100}, 2, RngStream(9, 0));
    REQUIRE(a.rows.size() == 8);
    CHECK(a.rows[0].n_samples == 10);
    CHECK(a.rows[0].delta == 1e-2);
    CHECK(a.rows[1].rep == 1);
    CHECK(a.rows[2].delta == 1e-1);
    CHECK(a.rows[4].n_samples == 100);
    for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].median == b.rows[i].median);
    CHECK(a.cell(1e-1, 100).n_samples == 100);
    CHECK_THROWS_AS(a.cell(0.5, 100), ConfigError);
  }
  SUBCASE("bad inputs") {
    CHECK_THROWS_AS(hj_sweep(l1(2), cfg, {}, {10}, 1, RngStream(9, 0)), ConfigError);
    CHECK_THROWS_AS(hj_sweep(l1(2), cfg, {1e-2}, {10}, 0, RngStream(9, 0)), ConfigError);
    cfg.p = 1.0;
    CHECK_THROWS_WITH_AS(hj_sweep(l1(2), cfg, {1e-2}, {10}, 1, RngStream(9, 0)),
                         doctest::Contains("q undefined, require p > 1"), ConfigError);
  }
}

TEST_CASE("unstable flag") {
  CHECK(hj_unstable(1.1));
  CHECK_FALSE(hj_unstable(2.0));
  CHECK_FALSE(hj_unstable(1.5));
}
