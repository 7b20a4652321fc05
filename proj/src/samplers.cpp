#include "lapx/samplers.hpp"

#include "lapx/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace lapx {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// log(1 - exp(-x)) for x > 0, accurate for small and large x.
double log1mexp(double x) {
  return x > M_LN2 ? std::log1p(-std::exp(-x)) : std::log(-std::expm1(-x));
}

void draw(const GaussianProposal& s, RngStream& rng, Eigen::Ref<Vector> out) {
  const double sd = std::sqrt(s.variance);
  for (Eigen::Index j = 0; j < out.size(); ++j) out[j] = s.mean[j] + sd * rng.normal();
}

void draw(const ProductLaplaceProposal& s, RngStream& rng, Eigen::Ref<Vector> out) {
  for (Eigen::Index j = 0; j < out.size(); ++j) {
    const double mag = rng.exponential(1.0) * s.scale;
    out[j] = s.center[j] + (rng.uniform() < 0.5 ? -mag : mag);
  }
}

void draw(const UniformBoxProposal& s, RngStream& rng, Eigen::Ref<Vector> out) {
  for (Eigen::Index j = 0; j < out.size(); ++j) out[j] = rng.uniform(s.box.lo[j], s.box.hi[j]);
}

void draw(const ExponentialOrthantProposal& s, RngStream& rng, Eigen::Ref<Vector> out) {
  for (Eigen::Index j = 0; j < out.size(); ++j) {
    const double r = s.rate[j];
    if (std::isinf(s.cap)) {
      out[j] = rng.exponential(r);
    } else {
      // inverse CDF of the exponential truncated to [0, cap]
      const double mass = -std::expm1(-r * s.cap);
      out[j] = std::min(s.cap, -std::log1p(-rng.uniform() * mass) / r);
    }
  }
}

}  // namespace

int proposal_dim(const ProposalSpec& spec) {
  return std::visit(overloaded{
                        [](const GaussianProposal& s) { return static_cast<int>(s.mean.size()); },
                        [](const ProductLaplaceProposal& s) { return static_cast<int>(s.center.size()); },
                        [](const UniformBoxProposal& s) { return s.box.dim(); },
                        [](const ExponentialOrthantProposal& s) { return static_cast<int>(s.rate.size()); },
                    },
                    spec);
}

void validate_proposal(const ProposalSpec& spec) {
  if (proposal_dim(spec) <= 0) throw ConfigError("proposal: dimension must be positive");
  std::visit(overloaded{
                 [](const GaussianProposal& s) {
                   if (!(s.variance > 0.0) || !std::isfinite(s.variance))
                     throw ConfigError("gaussian proposal: variance must be positive");
                 },
                 [](const ProductLaplaceProposal& s) {
                   if (!(s.scale > 0.0) || !std::isfinite(s.scale))
                     throw ConfigError("product_laplace proposal: scale must be positive");
                 },
                 [](const UniformBoxProposal& s) {
                   for (Eigen::Index j = 0; j < s.box.lo.size(); ++j)
                     if (!(s.box.lo[j] < s.box.hi[j]) || !std::isfinite(s.box.hi[j] - s.box.lo[j]))
                       throw ConfigError("uniform_box proposal: box must be bounded with lo < hi");
                 },
                 [](const ExponentialOrthantProposal& s) {
                   for (Eigen::Index j = 0; j < s.rate.size(); ++j)
                     if (!(s.rate[j] > 0.0) || !std::isfinite(s.rate[j]))
                       throw ConfigError("exponential_orthant proposal: rates must be positive");
                   if (!(s.cap > 0.0)) throw ConfigError("exponential_orthant proposal: cap must be positive");
                 },
             },
             spec);
}

Matrix sample(const ProposalSpec& spec, std::size_t n, const RngStream& rng) {
  if (n == 0) throw ConfigError("sample: n must be at least 1");
  validate_proposal(spec);
  const int d = proposal_dim(spec);
  Matrix out(d, static_cast<Eigen::Index>(n));
  parallel_for(num_chunks(n), [&](std::size_t c) {
    RngStream stream = rng.child(c);
    const std::size_t end = std::min(n, (c + 1) * kChunkSize);
    for (std::size_t i = c * kChunkSize; i < end; ++i) {
      auto col = out.col(static_cast<Eigen::Index>(i));
      std::visit([&](const auto& s) { draw(s, stream, col); }, spec);
    }
  });
  return out;
}

double logpdf(const ProposalSpec& spec, VectorRef y) {
  return std::visit(
      overloaded{
          [&](const GaussianProposal& s) {
            const double d = static_cast<double>(y.size());
            return -0.5 * (y - s.mean).squaredNorm() / s.variance -
                   0.5 * d * std::log(2.0 * M_PI * s.variance);
          },
          [&](const ProductLaplaceProposal& s) {
            const double d = static_cast<double>(y.size());
            return -(y - s.center).lpNorm<1>() / s.scale - d * std::log(2.0 * s.scale);
          },
          [&](const UniformBoxProposal& s) {
            return s.box.contains(y) ? -std::log(s.box.volume()) : -kInf;
          },
          [&](const ExponentialOrthantProposal& s) {
            double total = 0.0;
            for (Eigen::Index j = 0; j < y.size(); ++j) {
              if (y[j] < 0.0 || y[j] > s.cap) return -kInf;
              total += std::log(s.rate[j]) - s.rate[j] * y[j];
              if (std::isfinite(s.cap)) total -= log1mexp(s.rate[j] * s.cap);
            }
            return total;
          },
      },
      spec);
}

}  // namespace lapx
