#include "lapx/benchmarks.hpp"

#include <cmath>
#include <cstdint>

namespace lapx {

namespace {

constexpr int kWeierstrassTerms = 12;  // k = 0..11

double weierstrass_coordinate(double x) {
  double total = 0.0;
  double amp = 1.0, freq = 1.0;
  for (int k = 0; k < kWeierstrassTerms; ++k) {
    total += amp * std::cos(2.0 * M_PI * freq * (x + 0.5));
    amp *= 0.5;
    freq *= 3.0;
  }
  return total;
}

double ellipsoid_coeff(int i, int d) {
  return d == 1 ? 1.0 : std::pow(10.0, 6.0 * i / (d - 1));
}

}  // namespace

BenchmarkFn::BenchmarkFn(Benchmark kind, int dim) : kind_(kind), dim_(dim) {
  if (dim < 1) throw ConfigError("benchmark: dim must be positive");
  if (kind == Benchmark::kRosenbrock && dim < 2)
    throw ConfigError("benchmark: rosenbrock needs dim >= 2");
}

std::string BenchmarkFn::name() const { return benchmark_name(kind_); }

double BenchmarkFn::operator()(VectorRef x) const {
  const int d = dim_;
  switch (kind_) {
    case Benchmark::kSphere:
      return x.squaredNorm();
    case Benchmark::kEllipsoidal: {
      double s = 0.0;
      for (int i = 0; i < d; ++i) s += ellipsoid_coeff(i, d) * x[i] * x[i];
      return s;
    }
    case Benchmark::kDiscus:
      return 1e6 * x[0] * x[0] + x.tail(d - 1).squaredNorm();
    case Benchmark::kRosenbrock: {
      double s = 0.0;
      for (int i = 0; i + 1 < d; ++i) {
        const double a = x[i] + 1.0, b = x[i + 1] + 1.0;
        const double r = a * a - b;
        s += 100.0 * r * r + x[i] * x[i];
      }
      return s;
    }
    case Benchmark::kSharpRidge:
      return x[0] * x[0] + 100.0 * x.tail(d - 1).norm();
    case Benchmark::kWeierstrass: {
      // every term is minimized at the origin, where cos(pi 3^k) = -1
      static const double c0 = weierstrass_coordinate(0.0);
      double s = 0.0;
      for (int i = 0; i < d; ++i) s += weierstrass_coordinate(x[i]) - c0;
      return s / d;
    }
  }
  return 0.0;
}

Vector BenchmarkFn::gradient(VectorRef x) const {
  const int d = dim_;
  Vector g = Vector::Zero(d);
  switch (kind_) {
    case Benchmark::kSphere:
      return 2.0 * x;
    case Benchmark::kEllipsoidal:
      for (int i = 0; i < d; ++i) g[i] = 2.0 * ellipsoid_coeff(i, d) * x[i];
      return g;
    case Benchmark::kDiscus:
      g = 2.0 * x;
      g[0] *= 1e6;
      return g;
    case Benchmark::kRosenbrock:
      for (int i = 0; i + 1 < d; ++i) {
        const double a = x[i] + 1.0, b = x[i + 1] + 1.0;
        const double r = a * a - b;
        g[i] += 400.0 * r * a + 2.0 * x[i];
        g[i + 1] += -200.0 * r;
      }
      return g;
    case Benchmark::kSharpRidge: {
      g[0] = 2.0 * x[0];
      const double r = x.tail(d - 1).norm();
      if (r > 0.0) g.tail(d - 1) = 100.0 * x.tail(d - 1) / r;
      return g;
    }
    case Benchmark::kWeierstrass:
      return central_difference_gradient([this](VectorRef y) { return (*this)(y); }, x, 1e-6);
  }
  return g;
}

ObjectiveFn BenchmarkFn::objective() const {
  BenchmarkFn copy = *this;
  return ObjectiveFn([copy](VectorRef x) { return copy(x); }, dim_);
}

Benchmark parse_benchmark(const std::string& name) {
  for (Benchmark b : all_benchmarks())
    if (benchmark_name(b) == name) return b;
  if (name == "sharp ridge") return Benchmark::kSharpRidge;
  throw ConfigError("unknown benchmark '" + name + "'");
}

std::string benchmark_name(Benchmark kind) {
  switch (kind) {
    case Benchmark::kSphere: return "sphere";
    case Benchmark::kEllipsoidal: return "ellipsoidal";
    case Benchmark::kDiscus: return "discus";
    case Benchmark::kRosenbrock: return "rosenbrock";
    case Benchmark::kSharpRidge: return "sharp_ridge";
    case Benchmark::kWeierstrass: return "weierstrass";
  }
  return "unknown";
}

const std::vector<Benchmark>& all_benchmarks() {
  static const std::vector<Benchmark> all = {Benchmark::kSphere,     Benchmark::kEllipsoidal,
                                             Benchmark::kDiscus,     Benchmark::kRosenbrock,
                                             Benchmark::kSharpRidge, Benchmark::kWeierstrass};
  return all;
}

BenchmarkFn benchmark(const std::string& name, int dim) {
  return BenchmarkFn(parse_benchmark(name), dim);
}

Vector central_difference_gradient(const std::function<double(VectorRef)>& f, VectorRef x,
                                   double step) {
  Vector g(x.size());
  Vector y = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double xi = y[i];
    y[i] = xi + step;
    const double up = f(y);
    y[i] = xi - step;
    const double down = f(y);
    y[i] = xi;
    g[i] = (up - down) / (2.0 * step);
  }
  return g;
}

double lacunary_cosine(double x) {
  if (!std::isfinite(x)) throw DomainError("lacunary_cosine: x must be finite");
  // every term has period 2, so reduce to [-1, 1) and write x = m / 2^62;
  // then cos(23^k pi x) = cos(pi r / 2^62) with r = 23^k m mod 2^63
  double reduced = std::fmod(x + 1.0, 2.0);
  if (reduced < 0.0) reduced += 2.0;
  reduced -= 1.0;
  const auto m = static_cast<std::uint64_t>(static_cast<std::int64_t>(std::llround(std::ldexp(reduced, 62))));
  constexpr std::uint64_t kMask = (std::uint64_t{1} << 63) - 1;
  std::uint64_t power = 1;
  double scale = 1.0;
  double total = 0.0;
  for (int k = 0; k <= 100; ++k) {
    const std::uint64_t r = (power * m) & kMask;
    total += scale * std::cos(M_PI * std::ldexp(static_cast<double>(r), -62));
    power *= 23;
    scale *= 0.3;
  }
  return total;
}

ScalarTestFn scalar_test_function(const std::string& name) {
  if (name == "bumpy_quartic") {
    return {name, 0.2, 2.5, ObjectiveFn([](VectorRef y) {
              const double x = y[0];
              return 9.0 / 40.0 + std::pow(x - 1.0, 4) / 20.0 + std::sin(10.0 * M_PI * x) / (40.0 * x);
            }, 1)};
  }
  if (name == "sqrt_abs")
    return {name, -1.0, 1.0, ObjectiveFn([](VectorRef y) { return std::sqrt(std::abs(y[0])); }, 1)};
  if (name == "lacunary_cosine")
    return {name, 0.75, 1.75, ObjectiveFn([](VectorRef y) { return lacunary_cosine(y[0]); }, 1)};
  throw ConfigError("unknown test function '" + name + "'");
}

const std::vector<std::string>& scalar_test_names() {
  static const std::vector<std::string> names{"bumpy_quartic", "sqrt_abs", "lacunary_cosine"};
  return names;
}

}  // namespace lapx
