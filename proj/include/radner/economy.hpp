#ifndef RADNER_ECONOMY_HPP
#define RADNER_ECONOMY_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "radner/information.hpp"
#include "radner/lattice.hpp"

// Finite asymmetric-information exchange economies: state-dependent utility
// specifications from a fixed concave family, agents with information
// partitions and partition-measurable endowments, feasibility, the
// structural assumption audit, and the two derived economies (endowment
// perturbation toward an allocation, and the symmetric pooled-information
// twin).

namespace radner {

enum class UtilityForm { CobbDouglas, CES, Linear, LogLinear };

/// Additive shift inside log terms of the LogLinear form; fixed for the
/// whole tool so that serialized economies are self-contained.
inline constexpr double kLogShift = 1.0;

/// One state's utility function over bundles in R^l.
///
/// CobbDouglas: prod_k x_k^{w_k},     w_k > 0, sum_k w_k <= 1
/// CES:         (sum_k w_k x_k^rho)^{1/rho},  w_k > 0, rho < 1, rho != 0
/// Linear:      sum_k w_k x_k,        w_k > 0
/// LogLinear:   sum_k w_k log(x_k + 1), w_k > 0
///
/// Every form is continuous, monotone, and concave on the positive cone;
/// validate() enforces the parameter ranges that guarantee it.
struct StateUtility {
  UtilityForm form = UtilityForm::CobbDouglas;
  std::vector<double> weights;
  double rho = 0.0; // CES only

  void validate(std::size_t dim) const;
  double eval(const Bundle& x) const;
  /// Gradient at x, with coordinates clamped below at eps to keep the
  /// boundary singularities of CobbDouglas/CES finite. Writes into g.
  void grad(const Bundle& x, Bundle& g, double eps = 1e-10) const;
  bool operator==(const StateUtility&) const = default;
};

/// State-indexed utility: one StateUtility per state.
struct UtilitySpec {
  std::vector<StateUtility> per_state;

  std::size_t n_states() const { return per_state.size(); }
  void validate(std::size_t n_states, std::size_t dim) const;
  bool operator==(const UtilitySpec&) const = default;
};

/// An agent: information partition, partition-measurable endowment (stored
/// per block, so measurability is exact), state utilities, and a prior.
struct Agent {
  Partition partition;
  std::vector<Bundle> endowment_blocks; // one per partition block
  UtilitySpec utility;
  Prior prior;

  /// Dense per-state view of the endowment.
  RandomBundle endowment() const {
    return RandomBundle::from_blocks(partition, endowment_blocks);
  }
  void validate(std::size_t n_states, std::size_t dim) const;
  bool operator==(const Agent&) const = default;
};

/// The exchange economy over a finite state space and R^l commodities.
struct Economy {
  StateSpace states;
  std::size_t dim = 0;
  std::vector<Agent> agents;

  std::size_t n_agents() const { return agents.size(); }
  std::size_t n_states() const { return states.size(); }
  /// Structural validation (shapes, partitions, parameter ranges, priors);
  /// throws std::invalid_argument with a field-specific message.
  void validate() const;
  /// Sum of endowments, per state.
  RandomBundle aggregate_endowment() const;
  bool operator==(const Economy&) const = default;
};

/// One plan per agent. Plans built from block data are measurable by
/// construction; validate_measurability exists to audit external input.
struct Allocation {
  std::vector<RandomBundle> plans;

  std::size_t n_agents() const { return plans.size(); }
  bool operator==(const Allocation&) const = default;
};

/// Ex ante expected utility V_i(x) = sum_s q_i(s) U_i(s, x(s)).
double expected_utility(const Economy& e, std::size_t agent,
                        const RandomBundle& x);

/// Gradient of expected utility with respect to the per-block values of
/// the agent's partition; out has one Bundle per block.
void expected_utility_block_grad(const Economy& e, std::size_t agent,
                                 const std::vector<Bundle>& blocks,
                                 std::vector<Bundle>& out);

/// Evaluate expected utility for a block-parametrized plan.
double expected_utility_blocks(const Economy& e, std::size_t agent,
                               const std::vector<Bundle>& blocks);

/// Same pair for a plan parametrized on an arbitrary partition p (used by
/// pooled-information programs, where plans are finer than the agent's own
/// partition).
double expected_utility_on(const Economy& e, std::size_t agent,
                           const Partition& p, const std::vector<Bundle>& blocks);
void expected_utility_grad_on(const Economy& e, std::size_t agent,
                              const Partition& p,
                              const std::vector<Bundle>& blocks,
                              std::vector<Bundle>& out);

/// Feasibility: sum_i x_i(s) <= sum_i a_i(s) + tol coordinatewise, each
/// plan nonnegative. Shape mismatches throw.
bool is_feasible(const Economy& e, const Allocation& x, double tol = 0.0);

/// Audit of one plan's measurability and nonnegativity.
bool plan_admissible(const Economy& e, std::size_t agent, const RandomBundle& x,
                     double tol = 0.0);

enum class AuditVerdict { Holds, HoldsStrong, Fails, Undecided };

struct AuditEntry {
  std::string name;
  AuditVerdict verdict = AuditVerdict::Undecided;
  std::string detail;
};

/// Outcome of the structural assumption audit. Entries, in order:
///   utility-regularity  (continuity, monotonicity, concavity: by construction)
///   aggregate-strict    (aggregate endowment strictly positive each state)
///   aggregate-nonzero   (aggregate endowment nonzero each state)
///   agent-positivity    (each agent's state-inf endowment nonzero; strong
///                        when strictly positive in every coordinate)
///   aggregate-stability (support of the aggregate identical across states)
///   irreducibility      (sufficient condition: strictly positive individual
///                        endowments; otherwise undecided)
///   measurable-utilities (informational: state utilities constant on the
///                        agent's own partition blocks)
struct AuditReport {
  std::vector<AuditEntry> entries;
  bool pass = false; // all non-informational entries hold

  const AuditEntry* find(const std::string& name) const;
};

AuditReport audit_assumptions(const Economy& e);

/// The perturbed economy: agent i's endowment becomes
/// r_i * a_i + (1 - r_i) * x_i. Requires r_i in [0,1] and x_i measurable
/// and nonnegative; utilities, partitions, and priors are unchanged.
/// The perturbed endowment is measurable because both ingredients are.
Economy perturbed_economy(const Economy& e, const std::vector<double>& r,
                          const Allocation& x);

/// The symmetric-information twin: every agent's partition is replaced by
/// the join of all partitions, endowments re-expressed on the finer blocks.
Economy symmetric_information_economy(const Economy& e);

/// The one-state complete-information restriction of e to state s: used by
/// the per-state blocking scans. Utilities keep only state s, priors
/// collapse to 1.
Economy state_restriction(const Economy& e, std::size_t s);

} // namespace radner

#endif
