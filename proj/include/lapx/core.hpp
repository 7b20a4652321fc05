#ifndef LAPX_CORE_HPP_
#define LAPX_CORE_HPP_

#include <Eigen/Core>

#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>

namespace lapx {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using VectorRef = Eigen::Ref<const Eigen::VectorXd>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/*
 * Error types. Everything derives from std::runtime_error so callers that
 * do not care about the category can catch one type.
 */
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateWeights : public std::runtime_error {
 public:
  explicit DegenerateWeights(const std::string& what, std::size_t retained = 0)
      : std::runtime_error("degenerate weights: " + what), retained_(retained) {}
  std::size_t retained() const { return retained_; }

 private:
  std::size_t retained_;
};

class ProposalSupportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Real-valued black-box function on R^d with an evaluation counter.
///
/// Copies share the counter. The wrapped callable must be safe to call
/// concurrently; the counter is atomic. Characteristic functions return
/// +infinity outside their set.
class ObjectiveFn {
 public:
  using Fn = std::function<double(VectorRef)>;

  ObjectiveFn() = default;
  ObjectiveFn(Fn fn, int dim)
      : fn_(std::move(fn)),
        dim_(dim),
        count_(std::make_shared<std::atomic<std::uint64_t>>(0)) {
    if (dim <= 0) throw ConfigError("ObjectiveFn: dim must be positive");
  }

  double operator()(VectorRef x) const { return eval(x); }
  double eval(VectorRef x) const {
    count_->fetch_add(1, std::memory_order_relaxed);
    return fn_(x);
  }

  int dim() const { return dim_; }
  std::uint64_t eval_count() const {
    return count_->load(std::memory_order_relaxed);
  }
  void reset_count() const { count_->store(0, std::memory_order_relaxed); }
  explicit operator bool() const { return static_cast<bool>(fn_); }

 private:
  Fn fn_;
  int dim_ = 0;
  std::shared_ptr<std::atomic<std::uint64_t>> count_;
};

/// Wraps f in a new ObjectiveFn with its own counter. Calls still reach f,
/// so f's counter advances as well.
ObjectiveFn with_counter(const ObjectiveFn& f);

/// Axis-aligned box [lo, hi].
struct DomainBox {
  Vector lo;
  Vector hi;

  DomainBox() = default;
  DomainBox(Vector lo_, Vector hi_);
  static DomainBox cube(int dim, double lo, double hi);

  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(VectorRef x) const;
  double volume() const;
};

/// Counter-based random stream. A stream is fully determined by
/// (seed, stream_id); child streams are derived by hashing, so chunks of
/// work can draw from disjoint streams regardless of thread count.
class RngStream {
 public:
  RngStream() : RngStream(0, 0) {}
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Independent stream keyed by (this stream, k). Does not advance *this.
  RngStream child(std::uint64_t k) const;

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1].
  double uniform_pos() { return 1.0 - uniform(); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  double exponential(double rate);
  std::uint64_t poisson(double mean);
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace lapx

#endif  // LAPX_CORE_HPP_
