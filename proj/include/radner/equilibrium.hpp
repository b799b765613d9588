#ifndef RADNER_EQUILIBRIUM_HPP
#define RADNER_EQUILIBRIUM_HPP

#include <optional>
#include <string>
#include <vector>

#include "radner/economy.hpp"
#include "radner/optim.hpp"

// Price-taking equilibrium of the expectations economy. The solver iterates
// on social welfare weights: for fixed weights it computes the planner
// optimum under exact feasibility projections, recovers state prices from
// the averaged projection multipliers refined by a complementarity-aware
// nonnegative least-squares fit to the planner's first-order conditions,
// and then moves each weight multiplicatively on that agent's budget
// residual until residuals vanish. Verification is residual-based and
// independent of the solve path: budget feasibility, utility maximality
// against a fresh demand solve, total value clearing, and per-state value
// equality are each measured and compared against the caller's tolerance.

namespace radner {

/// One dual vector per state.
struct PriceSystem {
  std::vector<DualVector> pi;

  std::size_t n_states() const { return pi.size(); }
  std::size_t dim() const { return pi.empty() ? 0 : pi[0].dim(); }
  bool operator==(const PriceSystem&) const = default;
};

/// Total value sum_s <pi(s), x(s)>.
double budget_value(const PriceSystem& p, const RandomBundle& x);
/// Sum of every price coordinate over all states.
double price_mass(const PriceSystem& p);
/// Rescale so that price_mass(p) == 1; throws std::invalid_argument when
/// the mass is not strictly positive.
void normalize_prices(PriceSystem& p);

/// Residual-level audit of the equilibrium conditions at (x, prices).
struct EquilibriumReport {
  bool plans_admissible = false;  // nonnegative + measurable plans
  bool feasible = false;
  bool prices_admissible = false; // nonnegative with positive mass
  bool nontrivial = false;        // some agent has wealth above tol
  std::vector<double> wealth;
  /// spend - wealth per agent; budget feasibility wants <= tol.
  std::vector<double> budget_gap;
  /// Best found improvement of V_i inside the budget set. For positive
  /// wealth this is V_i(demand) - V_i(x_i); for zero wealth it is the
  /// largest utility gradient along a free (zero-price) block direction.
  std::vector<double> maximality_gap;
  /// True when the gap came from a demand solve.
  std::vector<bool> demand_checked;
  /// total spend - total wealth; equals the sum of the budget gaps
  /// exactly, and clearing wants |.| <= tol.
  double clearing_gap = 0.0;
  /// <pi(s), aggregate endowment - aggregate consumption> per state.
  std::vector<double> state_value_gap;
  bool full_ok = false;
  bool quasi_ok = false;
  std::string note;
};

EquilibriumReport verify_equilibrium(const Economy& e, const Allocation& x,
                                     const PriceSystem& prices, double tol,
                                     const optim::PgaOptions& demand_opt = {});

/// Full: budget feasibility for everyone, maximality for everyone.
/// Quasi: maximality guaranteed only for agents with positive wealth.
enum class EqKind { Full, Quasi };

struct EquilibriumCertificate {
  Allocation allocation;
  PriceSystem prices;          // normalized to unit mass
  std::vector<double> lambda;  // welfare weights at the fixed point, mean 1
  EqKind kind = EqKind::Full;
  double planner_value = 0.0;
  int outer_iters = 0;
  bool converged = false;      // budget residuals reached the target
  /// Verification at the solve tolerance; solve never returns unaudited
  /// output.
  EquilibriumReport report;
  std::string note;

  bool quasi_only() const { return kind == EqKind::Quasi; }
};

struct NegishiOptions {
  int max_outer = 500;
  /// Relative budget-residual target, against mean wealth.
  double budget_tol = 1e-8;
  /// Initial multiplicative step on the weights; halved on oscillation.
  double eta0 = 0.5;
  /// Wealth below this (relative to mean) classifies the result as Quasi.
  double quasi_wealth_cut = 1e-7;
  /// Tolerance for the certificate's embedded verification report.
  double tol = 1e-6;
  optim::PgaOptions pga{100000, 50, 1e-14, 1.0, 100};
  /// Optional initial weights (size n, positive); ones otherwise.
  std::vector<double> lambda0;
  /// Optional warm-start allocation; re-expressed per agent block.
  std::optional<Allocation> start;
};

EquilibriumCertificate solve_equilibrium(const Economy& e,
                                         const NegishiOptions& opt = {});

/// Budget-constrained expected-utility maximization for one agent at the
/// given prices. Requires strictly positive wealth; throws
/// std::invalid_argument mentioning a trivial budget otherwise (a
/// zero-wealth budget set has an empty interior and is handled by the
/// verifier directly).
RandomBundle demand(const Economy& e, std::size_t agent,
                    const PriceSystem& prices,
                    const optim::PgaOptions& opt = {});

/// A non-trivial quasi-equilibrium upgrades to a full equilibrium when the
/// sufficient irreducibility condition holds. The check re-verifies at the
/// full standard and reports which of the three outcomes happened.
struct UpgradeCheck {
  enum class Outcome { Upgraded, NotAsserted, CounterexampleResidual };
  Outcome outcome = Outcome::NotAsserted;
  EquilibriumReport report;
  std::string detail;
};

UpgradeCheck quasi_to_full_upgrade_check(const Economy& e,
                                         const EquilibriumCertificate& cert,
                                         double tol);

} // namespace radner

#endif
