#ifndef LAPX_SAMPLERS_HPP_
#define LAPX_SAMPLERS_HPP_

#include "lapx/core.hpp"

#include <variant>

namespace lapx {

/// N(mean, variance * I). For the Moreau kernel variance is delta * lambda.
struct GaussianProposal {
  Vector mean;
  double variance = 1.0;
};

/// prod_i exp(-|y_i - c_i| / scale) / (2 scale); the kernel of g = ||.||_1.
struct ProductLaplaceProposal {
  Vector center;
  double scale = 1.0;
};

struct UniformBoxProposal {
  DomainBox box;
};

/// prod_i rate_i exp(-rate_i y_i) on [0, cap]^d, renormalized when the cap
/// is finite.
struct ExponentialOrthantProposal {
  Vector rate;
  double cap = kInf;
};

using ProposalSpec = std::variant<GaussianProposal, ProductLaplaceProposal,
                                  UniformBoxProposal, ExponentialOrthantProposal>;

int proposal_dim(const ProposalSpec& spec);

/// Throws ConfigError on invalid parameters.
void validate_proposal(const ProposalSpec& spec);

/// n i.i.d. draws as columns of a d x n matrix. Draws are split into
/// fixed-size chunks and chunk c uses rng.child(c), so the result depends
/// only on (spec, n, rng), and the first k columns agree for any n >= k.
Matrix sample(const ProposalSpec& spec, std::size_t n, const RngStream& rng);

/// Exact log-density; -inf outside the support.
double logpdf(const ProposalSpec& spec, VectorRef y);

}  // namespace lapx

#endif  // LAPX_SAMPLERS_HPP_
