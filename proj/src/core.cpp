#include "lapx/core.hpp"

#include <cmath>

namespace lapx {

ObjectiveFn with_counter(const ObjectiveFn& f) {
  return ObjectiveFn([f](VectorRef x) { return f.eval(x); }, f.dim());
}

DomainBox::DomainBox(Vector lo_, Vector hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (lo.size() == 0 || lo.size() != hi.size())
    throw ConfigError("DomainBox: lo and hi must be non-empty and of equal size");
  for (Eigen::Index i = 0; i < lo.size(); ++i) {
    if (!(lo[i] < hi[i]))
      throw ConfigError("DomainBox: require lo < hi in every coordinate");
  }
}

DomainBox DomainBox::cube(int dim, double lo, double hi) {
  return DomainBox(Vector::Constant(dim, lo), Vector::Constant(dim, hi));
}

bool DomainBox::contains(VectorRef x) const {
  for (Eigen::Index i = 0; i < lo.size(); ++i)
    if (x[i] < lo[i] || x[i] > hi[i]) return false;
  return true;
}

double DomainBox::volume() const { return (hi - lo).prod(); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  key_ = splitmix64(splitmix64(seed) ^ (stream_id * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL));
}

RngStream RngStream::child(std::uint64_t k) const {
  return RngStream(seed_, splitmix64(stream_id_ ^ splitmix64(k + 0x632be59bd9b4e019ULL)));
}

// SplitMix64 output function applied to (key, counter): a counter-based
// generator, so the n-th draw of a stream never depends on other streams.
std::uint64_t RngStream::next_u64() {
  std::uint64_t z = key_ + (++counter_) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

// Box-Muller; the second variate of each pair is cached.
double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  const double u1 = uniform_pos();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  spare_normal_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

double RngStream::exponential(double rate) {
  return -std::log(uniform_pos()) / rate;
}

std::uint64_t RngStream::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean))
    throw DomainError("poisson: mean must be finite and nonnegative");
  // Knuth's multiplication method on pieces of mean <= 16; a sum of
  // independent Poissons is Poisson with the summed mean.
  std::uint64_t total = 0;
  double remaining = mean;
  while (remaining > 0.0) {
    const double piece = std::min(remaining, 16.0);
    remaining -= piece;
    const double limit = std::exp(-piece);
    double prod = uniform_pos();
    while (prod > limit) {
      ++total;
      prod *= uniform_pos();
    }
  }
  return total;
}

std::uint64_t RngStream::below(std::uint64_t n) {
  if (n == 0) throw DomainError("below: n must be positive");
  const std::uint64_t threshold = -n % n;
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return r % n;
  }
}

}  // namespace lapx
