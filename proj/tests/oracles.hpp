#ifndef RADNER_TESTS_ORACLES_HPP
#define RADNER_TESTS_ORACLES_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "radner/economy.hpp"
#include "radner/equilibrium.hpp"
#include "radner/lattice.hpp"

// Reference computations the tests trust instead of the library under
// test. Everything here is written from the defining formulas and kept
// deliberately naive: closed forms where they exist, exhaustive grids
// where they do not.

namespace oracles {

/// Cobb-Douglas demand at prices p and wealth W: the spending share of
/// good k is w_k / sum(w), so x_k = (w_k / sum(w)) * W / p_k.
radner::Bundle cd_demand(const std::vector<double>& w,
                         const std::vector<double>& p, double wealth);

/// The symmetric two-good box: one state, two Cobb-Douglas agents with
/// equal weights (1/2, 1/2) endowed with (1,0) and (0,1).
radner::Economy edgeworth_economy();

/// Its closed-form equilibrium. With equal weights the clearing equation
/// 0.5 * (total wealth) / p_k = 1 pins p = (1/2, 1/2) at unit price mass,
/// and both agents demand (1/2, 1/2).
radner::Allocation edgeworth_allocation();
radner::PriceSystem edgeworth_prices();

/// sup{ <f,y> + <g,x-y> : 0 <= y <= x } by grid search with `points`
/// levels per coordinate. The optimum of this separable program sits at a
/// per-coordinate endpoint and the grid contains both endpoints, so the
/// grid value is exact, not approximate.
double rk_sup_grid(const radner::DualVector& f, const radner::DualVector& g,
                   const radner::Bundle& x, std::size_t points);
double rk_inf_grid(const radner::DualVector& f, const radner::DualVector& g,
                   const radner::Bundle& x, std::size_t points);

/// Audit of a decomposition result: parts sum to the z-total, and each
/// part sits between the floor and its cap, all within tol.
bool riesz_parts_ok(const std::vector<radner::Bundle>& z,
                    const std::vector<radner::Bundle>& y,
                    const radner::Bundle& floor,
                    const std::vector<radner::Bundle>& parts, double tol,
                    std::string* why = nullptr);

/// Exhaustive-grid blocking verdict for two-agent, single-good, two-state
/// economies. Every coalition is scanned; coalition plans enumerate one
/// agent's measurable block values on the grid {0, step, 2*step, ...}
/// (the block cap is always included) and hand the other agent the
/// largest measurable remainder, in both directions. delta is the best
/// min-margin found anywhere.
struct TinyVerdict {
  bool blocks = false;
  double delta = -1e300;
};
TinyVerdict tiny_grid_blocking(const radner::Economy& e,
                               const radner::Allocation& x, double step,
                               double tol);

/// The commodity-space classification table, frozen as display strings.
struct ChartRow {
  radner::SpaceDescriptor space;
  std::string name;
  std::string expected;
};
const std::vector<ChartRow>& chart_rows();

} // namespace oracles

#endif
