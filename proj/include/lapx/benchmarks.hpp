#ifndef LAPX_BENCHMARKS_HPP_
#define LAPX_BENCHMARKS_HPP_

#include "lapx/core.hpp"

#include <string>
#include <vector>

namespace lapx {

enum class Benchmark { kSphere, kEllipsoidal, kDiscus, kRosenbrock, kSharpRidge, kWeierstrass };

/// Raw (untransformed) benchmark functions, shifted so that the global
/// minimum value 0 is attained at the origin:
///
///   sphere       ||x||^2
///   ellipsoidal  sum_i 10^(6 (i-1)/(d-1)) x_i^2
///   discus       10^6 x_1^2 + sum_{i>=2} x_i^2
///   rosenbrock   sum_{i<d} 100 ((x_i+1)^2 - (x_{i+1}+1))^2 + x_i^2
///   sharp_ridge  x_1^2 + 100 sqrt(sum_{i>=2} x_i^2)
///   weierstrass  (1/d) sum_i sum_{k=0}^{11} 2^-k cos(2 pi 3^k (x_i + 1/2)) - c0
class BenchmarkFn {
 public:
  BenchmarkFn(Benchmark kind, int dim = 10);

  Benchmark kind() const { return kind_; }
  int dim() const { return dim_; }
  std::string name() const;

  double operator()(VectorRef x) const;
  /// Analytic gradient. sharp_ridge on its ridge (x_2..x_d = 0) drops the
  /// ridge term; weierstrass uses central differences with step 1e-6.
  Vector gradient(VectorRef x) const;
  ObjectiveFn objective() const;

 private:
  Benchmark kind_;
  int dim_;
};

/// Parses the stable CLI identifiers: sphere, ellipsoidal, discus,
/// rosenbrock, sharp_ridge, weierstrass. Throws ConfigError otherwise.
Benchmark parse_benchmark(const std::string& name);
std::string benchmark_name(Benchmark kind);
const std::vector<Benchmark>& all_benchmarks();

BenchmarkFn benchmark(const std::string& name, int dim = 10);

/// Central-difference gradient of any callable.
Vector central_difference_gradient(const std::function<double(VectorRef)>& f, VectorRef x,
                                   double step);

/// One-dimensional test functions whose minimizers are only locally
/// Holder, on the domains used by the oracle experiments:
///
///   bumpy_quartic    9/40 + (x-1)^4/20 + sin(10 pi x)/(40 x)  on [0.2, 2.5]
///   sqrt_abs         |x|^0.5                                   on [-1, 1]
///   lacunary_cosine  sum_{k=0}^{100} 0.3^k cos(23^k pi x)      on [0.75, 1.75]
///
/// lacunary_cosine is even with period 2, so its window is placed around
/// the unique minimizer x = 1 rather than around the origin.
struct ScalarTestFn {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
  ObjectiveFn fn;
};

ScalarTestFn scalar_test_function(const std::string& name);
const std::vector<std::string>& scalar_test_names();

/// sum_{k=0}^{100} 0.3^k cos(23^k pi x). The phase 23^k x mod 2 is taken
/// in exact integer arithmetic after reducing x mod 2 to a multiple of
/// 2^-62, so values are exact (to rounding of each cosine) at every dyadic
/// grid node and for all doubles with |x mod 2| >= 2^-10.
double lacunary_cosine(double x);

}  // namespace lapx

#endif  // LAPX_BENCHMARKS_HPP_
