#include "radner/economy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace radner {

void StateUtility::validate(std::size_t dim) const {
  if (weights.size() != dim)
    throw std::invalid_argument("utility: weight count must equal the commodity dimension");
  for (double w : weights)
    if (!(w > 0.0) || !std::isfinite(w))
      throw std::invalid_argument("utility: weights must be strictly positive");
  switch (form) {
    case UtilityForm::CobbDouglas: {
      double s = 0.0;
      for (double w : weights) s += w;
      if (s > 1.0 + 1e-12)
        throw std::invalid_argument("utility: CobbDouglas exponents must sum to at most 1");
      break;
    }
    case UtilityForm::CES:
      if (!(rho < 1.0) || rho == 0.0 || !std::isfinite(rho))
        throw std::invalid_argument("utility: CES requires rho < 1 and rho != 0");
      break;
    case UtilityForm::Linear:
    case UtilityForm::LogLinear:
      break;
  }
}

double StateUtility::eval(const Bundle& x) const {
  const std::size_t dim = weights.size();
  switch (form) {
    case UtilityForm::CobbDouglas: {
      // log-domain product; any zero coordinate sends the product to 0
      double lg = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        if (x[k] <= 0.0) return 0.0;
        lg += weights[k] * std::log(x[k]);
      }
      return std::exp(lg);
    }
    case UtilityForm::CES: {
      if (rho < 0.0) {
        // limit value 0 when any coordinate vanishes
        for (std::size_t k = 0; k < dim; ++k)
          if (x[k] <= 0.0) return 0.0;
      }
      double s = 0.0;
      for (std::size_t k = 0; k < dim; ++k)
        s += weights[k] * std::pow(std::max(x[k], 0.0), rho);
      return std::pow(s, 1.0 / rho);
    }
    case UtilityForm::Linear: {
      double s = 0.0;
      for (std::size_t k = 0; k < dim; ++k) s += weights[k] * x[k];
      return s;
    }
    case UtilityForm::LogLinear: {
      double s = 0.0;
      for (std::size_t k = 0; k < dim; ++k)
        s += weights[k] * std::log(x[k] + kLogShift);
      return s;
    }
  }
  return 0.0;
}

void StateUtility::grad(const Bundle& x, Bundle& g, double eps) const {
  const std::size_t dim = weights.size();
  if (g.dim() != dim) g = Bundle(dim);
  switch (form) {
    case UtilityForm::CobbDouglas: {
      double lg = 0.0;
      for (std::size_t k = 0; k < dim; ++k)
        lg += weights[k] * std::log(std::max(x[k], eps));
      double u = std::exp(lg);
      for (std::size_t k = 0; k < dim; ++k)
        g[k] = weights[k] * u / std::max(x[k], eps);
      break;
    }
    case UtilityForm::CES: {
      double s = 0.0;
      for (std::size_t k = 0; k < dim; ++k)
        s += weights[k] * std::pow(std::max(x[k], eps), rho);
      double outer = std::pow(s, 1.0 / rho - 1.0);
      for (std::size_t k = 0; k < dim; ++k)
        g[k] = outer * weights[k] * std::pow(std::max(x[k], eps), rho - 1.0);
      break;
    }
    case UtilityForm::Linear:
      for (std::size_t k = 0; k < dim; ++k) g[k] = weights[k];
      break;
    case UtilityForm::LogLinear:
      for (std::size_t k = 0; k < dim; ++k)
        g[k] = weights[k] / (std::max(x[k], 0.0) + kLogShift);
      break;
  }
}

void UtilitySpec::validate(std::size_t n_states, std::size_t dim) const {
  if (per_state.size() != n_states)
    throw std::invalid_argument("utility: need one state utility per state");
  for (const StateUtility& u : per_state) u.validate(dim);
}

void Agent::validate(std::size_t n_states, std::size_t dim) const {
  if (partition.n_states() != n_states)
    throw std::invalid_argument("agent: partition state count mismatch");
  if (endowment_blocks.size() != partition.n_blocks())
    throw std::invalid_argument("agent: need one endowment bundle per partition block");
  for (const Bundle& b : endowment_blocks) {
    if (b.dim() != dim)
      throw std::invalid_argument("agent: endowment dimension mismatch");
    if (!is_nonneg(b))
      throw std::invalid_argument("agent: endowments must be nonnegative");
  }
  utility.validate(n_states, dim);
  if (prior.size() != n_states)
    throw std::invalid_argument("agent: prior state count mismatch");
  prior.validate(1e-9);
}

void Economy::validate() const {
  if (states.size() == 0) throw std::invalid_argument("economy: no states");
  if (dim == 0) throw std::invalid_argument("economy: zero commodity dimension");
  if (agents.empty()) throw std::invalid_argument("economy: no agents");
  for (std::size_t s = 0; s < states.size(); ++s)
    for (std::size_t t = s + 1; t < states.size(); ++t)
      if (states.labels[s] == states.labels[t])
        throw std::invalid_argument("economy: duplicate state label " + states.labels[s]);
  for (const Agent& a : agents) a.validate(states.size(), dim);
}

RandomBundle Economy::aggregate_endowment() const {
  RandomBundle total(n_states(), dim);
  for (const Agent& a : agents) total = add(total, a.endowment());
  return total;
}

double expected_utility(const Economy& e, std::size_t agent,
                        const RandomBundle& x) {
  const Agent& a = e.agents[agent];
  if (x.n_states() != e.n_states() || x.dim() != e.dim)
    throw std::invalid_argument("expected_utility: plan shape mismatch");
  double v = 0.0;
  for (std::size_t s = 0; s < e.n_states(); ++s)
    v += a.prior[s] * a.utility.per_state[s].eval(x.at(s));
  return v;
}

double expected_utility_on(const Economy& e, std::size_t agent,
                           const Partition& p,
                           const std::vector<Bundle>& blocks) {
  const Agent& a = e.agents[agent];
  double v = 0.0;
  for (std::size_t bi = 0; bi < p.n_blocks(); ++bi)
    for (std::size_t s : p.block(bi))
      v += a.prior[s] * a.utility.per_state[s].eval(blocks[bi]);
  return v;
}

void expected_utility_grad_on(const Economy& e, std::size_t agent,
                              const Partition& p,
                              const std::vector<Bundle>& blocks,
                              std::vector<Bundle>& out) {
  const Agent& a = e.agents[agent];
  out.assign(p.n_blocks(), Bundle(e.dim));
  Bundle g(e.dim);
  for (std::size_t bi = 0; bi < p.n_blocks(); ++bi) {
    for (std::size_t s : p.block(bi)) {
      a.utility.per_state[s].grad(blocks[bi], g);
      for (std::size_t k = 0; k < e.dim; ++k)
        out[bi][k] += a.prior[s] * g[k];
    }
  }
}

double expected_utility_blocks(const Economy& e, std::size_t agent,
                               const std::vector<Bundle>& blocks) {
  return expected_utility_on(e, agent, e.agents[agent].partition, blocks);
}

void expected_utility_block_grad(const Economy& e, std::size_t agent,
                                 const std::vector<Bundle>& blocks,
                                 std::vector<Bundle>& out) {
  expected_utility_grad_on(e, agent, e.agents[agent].partition, blocks, out);
}

bool is_feasible(const Economy& e, const Allocation& x, double tol) {
  if (x.n_agents() != e.n_agents())
    throw std::invalid_argument("is_feasible: agent count mismatch");
  RandomBundle total(e.n_states(), e.dim);
  for (const RandomBundle& plan : x.plans) {
    if (plan.n_states() != e.n_states() || plan.dim() != e.dim)
      throw std::invalid_argument("is_feasible: plan shape mismatch");
    if (!is_nonneg(plan, tol)) return false;
    total = add(total, plan);
  }
  return leq(total, e.aggregate_endowment(), tol);
}

bool plan_admissible(const Economy& e, std::size_t agent, const RandomBundle& x,
                     double tol) {
  if (x.n_states() != e.n_states() || x.dim() != e.dim)
    throw std::invalid_argument("plan_admissible: plan shape mismatch");
  return is_nonneg(x, tol) && is_measurable(x, e.agents[agent].partition, tol);
}

const AuditEntry* AuditReport::find(const std::string& name) const {
  for (const AuditEntry& en : entries)
    if (en.name == name) return &en;
  return nullptr;
}

AuditReport audit_assumptions(const Economy& e) {
  e.validate();
  AuditReport rep;
  const RandomBundle agg = e.aggregate_endowment();

  rep.entries.push_back(
      {"utility-regularity", AuditVerdict::Holds,
       "continuity, monotonicity, concavity hold for every supported form"});

  {
    AuditEntry en{"aggregate-strict", AuditVerdict::Holds, ""};
    for (std::size_t s = 0; s < e.n_states() && en.verdict == AuditVerdict::Holds; ++s)
      if (!quasi_interior(agg.at(s))) {
        en.verdict = AuditVerdict::Fails;
        en.detail = "aggregate endowment has a zero coordinate in state " +
                    e.states.labels[s];
      }
    rep.entries.push_back(en);
  }

  {
    AuditEntry en{"aggregate-nonzero", AuditVerdict::Holds, ""};
    for (std::size_t s = 0; s < e.n_states() && en.verdict == AuditVerdict::Holds; ++s) {
      double m = sup_norm(agg.at(s));
      if (!(m > 0.0)) {
        en.verdict = AuditVerdict::Fails;
        en.detail = "aggregate endowment vanishes in state " + e.states.labels[s];
      }
    }
    rep.entries.push_back(en);
  }

  {
    AuditEntry en{"agent-positivity", AuditVerdict::HoldsStrong, ""};
    for (std::size_t i = 0; i < e.n_agents(); ++i) {
      Bundle lo = state_inf(e.agents[i].endowment());
      if (!(sup_norm(lo) > 0.0)) {
        en.verdict = AuditVerdict::Fails;
        en.detail = "agent " + std::to_string(i) +
                    " has a state-infimum endowment of zero";
        break;
      }
      if (!quasi_interior(lo) && en.verdict == AuditVerdict::HoldsStrong) {
        en.verdict = AuditVerdict::Holds;
        en.detail = "agent " + std::to_string(i) +
                    " state-infimum endowment is not strictly positive in every coordinate";
      }
    }
    rep.entries.push_back(en);
  }

  {
    AuditEntry en{"aggregate-stability", AuditVerdict::Holds, ""};
    std::vector<bool> support0(e.dim);
    for (std::size_t k = 0; k < e.dim; ++k) support0[k] = agg.at(0)[k] > 0.0;
    for (std::size_t s = 1; s < e.n_states() && en.verdict == AuditVerdict::Holds; ++s)
      for (std::size_t k = 0; k < e.dim; ++k)
        if ((agg.at(s)[k] > 0.0) != support0[k]) {
          en.verdict = AuditVerdict::Fails;
          en.detail = "aggregate support differs between states " +
                      e.states.labels[0] + " and " + e.states.labels[s];
          break;
        }
    rep.entries.push_back(en);
  }

  {
    // Sufficient condition only: strictly positive individual endowments in
    // every state and coordinate. Anything weaker is reported undecided,
    // never decided negatively.
    AuditEntry en{"irreducibility", AuditVerdict::Holds,
                  "sufficient condition holds (strictly positive endowments)"};
    for (std::size_t i = 0; i < e.n_agents(); ++i) {
      Bundle lo = state_inf(e.agents[i].endowment());
      if (!quasi_interior(lo)) {
        en.verdict = AuditVerdict::Undecided;
        en.detail = "sufficient condition not met; irreducibility undecided";
        break;
      }
    }
    rep.entries.push_back(en);
  }

  {
    // Informational: state utilities constant across each agent's own blocks.
    AuditEntry en{"measurable-utilities", AuditVerdict::Holds, ""};
    for (std::size_t i = 0; i < e.n_agents() && en.verdict == AuditVerdict::Holds; ++i) {
      const Agent& a = e.agents[i];
      for (const auto& block : a.partition.blocks()) {
        for (std::size_t s : block)
          if (!(a.utility.per_state[s] == a.utility.per_state[block[0]])) {
            en.verdict = AuditVerdict::Fails;
            en.detail = "agent " + std::to_string(i) +
                        " has state-dependent utility inside a partition block";
            break;
          }
        if (en.verdict != AuditVerdict::Holds) break;
      }
    }
    rep.entries.push_back(en);
  }

  rep.pass = true;
  for (const AuditEntry& en : rep.entries) {
    if (en.name == "measurable-utilities") continue; // informational
    if (en.verdict == AuditVerdict::Fails) rep.pass = false;
  }
  return rep;
}

Economy perturbed_economy(const Economy& e, const std::vector<double>& r,
                          const Allocation& x) {
  if (r.size() != e.n_agents() || x.n_agents() != e.n_agents())
    throw std::invalid_argument("perturbed_economy: agent count mismatch");
  Economy out = e;
  for (std::size_t i = 0; i < e.n_agents(); ++i) {
    if (!(r[i] >= 0.0 && r[i] <= 1.0))
      throw std::invalid_argument("perturbed_economy: r must lie in [0,1]");
    const RandomBundle& xi = x.plans[i];
    if (!plan_admissible(e, i, xi, 1e-9))
      throw std::invalid_argument(
          "perturbed_economy: plan " + std::to_string(i) +
          " is not a nonnegative measurable plan for its agent");
    const Partition& p = e.agents[i].partition;
    std::vector<Bundle> blocks(p.n_blocks());
    for (std::size_t bi = 0; bi < p.n_blocks(); ++bi) {
      std::size_t s0 = p.block(bi)[0];
      blocks[bi] = add(scale(r[i], e.agents[i].endowment_blocks[bi]),
                       scale(1.0 - r[i], xi.at(s0)));
    }
    out.agents[i].endowment_blocks = std::move(blocks);
  }
  return out;
}

Economy symmetric_information_economy(const Economy& e) {
  std::vector<Partition> parts;
  parts.reserve(e.n_agents());
  for (const Agent& a : e.agents) parts.push_back(a.partition);
  Partition pooled = join(parts);

  Economy out = e;
  for (Agent& a : out.agents) {
    RandomBundle endow = a.endowment();
    std::vector<Bundle> blocks(pooled.n_blocks());
    for (std::size_t bi = 0; bi < pooled.n_blocks(); ++bi)
      blocks[bi] = endow.at(pooled.block(bi)[0]);
    a.partition = pooled;
    a.endowment_blocks = std::move(blocks);
  }
  return out;
}

Economy state_restriction(const Economy& e, std::size_t s) {
  if (s >= e.n_states())
    throw std::invalid_argument("state_restriction: state index out of range");
  Economy out;
  out.states = StateSpace({e.states.labels[s]});
  out.dim = e.dim;
  out.agents.reserve(e.n_agents());
  for (const Agent& a : e.agents) {
    Agent b;
    b.partition = Partition::trivial(1);
    b.endowment_blocks = {a.endowment().at(s)};
    b.utility.per_state = {a.utility.per_state[s]};
    b.prior = Prior({1.0});
    out.agents.push_back(std::move(b));
  }
  return out;
}

} // namespace radner
