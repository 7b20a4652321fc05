#include "registry.hpp"

#include "lapx/bpgd.hpp"

namespace lapx::detail {

namespace {

BPGDConfig bpgd_config(const nlohmann::json& j, int dim) {
  BPGDConfig cfg;
  cfg.eta = j["eta"].get<double>();
  cfg.delta = j["delta"].get<double>();
  cfg.n_samples = j["n_samples"].get<std::size_t>();
  cfg.variable_metric_cap = j["varmetric_cap"].get<double>();
  if (j["proposal"].get<std::string>() == "exponential")
    cfg.coordinate_proposal = ExponentialOrthantProposal{Vector::Constant(1, j["proposal_rate"].get<double>()),
                                                         j["proposal_hi"].get<double>()};
  else
    cfg.coordinate_proposal =
        UniformBoxProposal{DomainBox::cube(1, j["proposal_lo"].get<double>(), j["proposal_hi"].get<double>())};
  cfg.x0 = Vector::Constant(dim, j["x0"].get<double>());
  return cfg;
}

// Problems are generated from the seed so validation can check eta * L.
GeneratedProblem problem_for(std::uint64_t seed, std::size_t index, int n, int d,
                             Conditioning c, double mu) {
  GeneratedProblem g = gen_poisson_problem(n, d, RngStream(seed, 7).child(index), c);
  g.problem.mu = mu;
  return g;
}

void resolve(Params& p, std::uint64_t seed) {
  const long n = p.integer("n", 5), d = p.integer("d", 5);
  require_at_least(p, "n", n, 1);
  require_at_least(p, "d", d, 1);
  const auto conds = p.texts("conditioning", {"well", "ill"});
  require_nonempty(p, "conditioning", conds.size());
  const auto variants = p.texts("variants", {"exact", "laplace_burg", "laplace_varmetric"});
  require_nonempty(p, "variants", variants.size());
  for (const auto& v : variants) {
    try {
      parse_bpgd_variant(v);
    } catch (const ConfigError& e) {
      p.fail("variants", e.what());
    }
  }
  const double mu = p.real("mu", 1e-3);
  if (!(mu >= 0.0)) p.fail("mu", "must be nonnegative");
  const double eta = p.real("eta", 1e-5);
  require_positive(p, "eta", eta);
  require_positive(p, "delta", p.real("delta", 2e-3));
  require_at_least(p, "n_samples", p.integer("n_samples", 50000), 1);
  require_at_least(p, "iters", p.integer("iters", 1000), 0);
  const std::string proposal = p.text("proposal", "uniform");
  if (proposal != "uniform" && proposal != "exponential")
    p.fail("proposal", "expected uniform or exponential");
  const double lo = p.real("proposal_lo", 1e-6), hi = p.real("proposal_hi", 50.0);
  if (!(lo > 0.0)) p.fail("proposal_lo", "must be positive (Burg entropy needs y > 0)");
  if (!(hi > lo)) p.fail("proposal_hi", "must exceed proposal_lo");
  require_positive(p, "proposal_rate", p.real("proposal_rate", 1.0));
  if (!(p.real("varmetric_cap", 50.0) > 1e-6)) p.fail("varmetric_cap", "must exceed 1e-6");
  require_positive(p, "x0", p.real("x0", 1.0));
  if (n < 1 || d < 1) return;

  for (std::size_t c = 0; c < conds.size(); ++c) {
    Conditioning cond;
    try {
      cond = parse_conditioning(conds[c]);
    } catch (const ConfigError& e) {
      p.fail("conditioning", e.what());
      continue;
    }
    if (cond == Conditioning::kIll && n != d) {
      p.fail("conditioning", "the ill-conditioned instance needs n == d");
      continue;
    }
    const GeneratedProblem g = problem_for(seed, c, static_cast<int>(n), static_cast<int>(d), cond, mu);
    if (eta > 0.0 && !(eta * g.problem.L < 1.0)) {
      p.fail("eta", "step-size constraint eta * L < 1 violated for the " + conds[c] +
                        " problem (L = " + format_number(g.problem.L) + ", eta * L = " +
                        format_number(eta * g.problem.L) + ")");
    }
  }
}

Table run(const nlohmann::json& j, std::uint64_t seed) {
  Table t;
  t.columns = {"conditioning", "variant", "iteration", "criterion", "status"};
  const int n = j["n"].get<int>(), d = j["d"].get<int>();
  const auto conds = j["conditioning"].get<std::vector<std::string>>();
  const auto variants = j["variants"].get<std::vector<std::string>>();
  const auto iters = j["iters"].get<std::size_t>();
  for (std::size_t c = 0; c < conds.size(); ++c) {
    const GeneratedProblem g =
        problem_for(seed, c, n, d, parse_conditioning(conds[c]), j["mu"].get<double>());
    const BPGDConfig cfg = bpgd_config(j, d);
    for (const auto& v : variants) {
      // variants of one problem share their streams
      const OptTrace trace = bpgd_run(g.problem, cfg, parse_bpgd_variant(v), iters, RngStream(seed, 8).child(c));
      std::string status = "completed";
      if (trace.status == TraceStatus::kDegenerate) status = "degenerate";
      else if (trace.status == TraceStatus::kStepSize) status = "step_size";
      for (std::size_t k = 0; k <= iters; ++k) {
        const double value = k < trace.size() ? trace.values[k] : kInf;
        t.add({conds[c], v, format_number(k), format_number(value), status});
      }
    }
  }
  return t;
}

}  // namespace

ExperimentDef bpgd_compare_def() {
  return {{"bpgd_compare", "bpgd",
           "Exact vs Laplace Bregman proximal gradient on Poisson inverse problems"},
          resolve, run};
}

}  // namespace lapx::detail
