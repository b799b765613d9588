#ifndef RADNER_OPTIM_HPP
#define RADNER_OPTIM_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "radner/information.hpp"
#include "radner/lattice.hpp"

// Shared optimization engine for the equilibrium and blocking solvers.
//
// All concave programs in this tool share one feasible-set shape: each
// participant ("slot") holds one bundle per block of its information
// partition, subject to nonnegativity and, per state and coordinate, a
// weighted resource cap  sum_i w_i * v_i(state) <= cap(state).  Because a
// block variable appears in one constraint per state of its block, the
// Euclidean projection onto the set could not be done state by state when
// partitions are coarse; it is computed exactly via coordinate ascent on
// the projection dual (one multiplier per state and coordinate), where
// each single-state update is a closed-form weighted knapsack projection.
// With singleton blocks this reduces to independent per-state knapsack
// projections in one pass.

namespace radner::optim {

/// slot -> block -> bundle. The partition that gives blocks their meaning
/// is supplied separately (Projector / the caller).
using BlockVars = std::vector<std::vector<Bundle>>;

BlockVars zero_like(const BlockVars& v);
void bv_copy(const BlockVars& src, BlockVars& dst);
/// dst += s * g
void bv_axpy(double s, const BlockVars& g, BlockVars& dst);
double bv_dot(const BlockVars& a, const BlockVars& b);
double bv_sup_norm(const BlockVars& a);

/// Closed-form solution of  min 1/2 sum (y_i - p_i)^2  subject to
/// sum w_i y_i <= cap, y >= 0  (w_i > 0, cap >= 0); returns the
/// multiplier mu >= 0, so that y_i = max(0, p_i - w_i * mu).
double knapsack_multiplier(const std::vector<double>& p,
                           const std::vector<double>& w, double cap);

/// Exact projection onto
///   { v >= 0 : sum_i w_i * v_i(s)[k] <= caps(s)[k]  for all s, k }
/// for block-parametrized v. Multipliers of the last projection are
/// retained (per state and coordinate) and warm-start the next call.
class Projector {
 public:
  Projector(std::vector<Partition> parts, std::vector<double> weights,
            RandomBundle caps);

  void project(BlockVars& v);
  /// Relaxes the dual stopping rule. The result is still hard-clamped to
  /// feasibility, so this only trades projection accuracy for speed; use it
  /// when the caller re-evaluates its objective exactly afterwards.
  void relax(double tol, int max_sweeps) { tol_ = tol; max_sweeps_ = max_sweeps; }
  /// Multipliers mu[s][k] from the most recent call.
  const std::vector<std::vector<double>>& duals() const { return mu_; }
  const RandomBundle& caps() const { return caps_; }
  std::size_t n_slots() const { return parts_.size(); }
  const Partition& partition(std::size_t slot) const { return parts_[slot]; }
  double weight(std::size_t slot) const { return weights_[slot]; }
  /// A feasible, block-structured starting point: the caps split evenly
  /// across slots and averaged over blocks, then projected.
  BlockVars feasible_start();

 private:
  std::vector<Partition> parts_;
  std::vector<double> weights_;
  RandomBundle caps_;
  std::vector<std::vector<double>> mu_; // state -> coord
  double cap_scale_ = 1.0;
  double tol_ = 1e-15;
  int max_sweeps_ = 400;
};

/// Projection onto a single linear budget constraint
///   { v >= 0 : sum over all blocks and coordinates of price * v <= wealth }
/// with per-block prices (the state-aggregated price of a block). Exact in
/// one knapsack pass.
class BudgetProjector {
 public:
  BudgetProjector(std::vector<std::vector<Bundle>> block_prices, double wealth);
  void project(BlockVars& v);
  const std::vector<std::vector<double>>& duals() const { return empty_; }

 private:
  std::vector<std::vector<Bundle>> prices_;
  double wealth_;
  std::vector<std::vector<double>> empty_;
};

struct PgaOptions {
  int max_iters = 100000;
  int window = 50;          // plateau window (iterations)
  double rel_tol = 1e-10;   // relative objective change over the window
  double step0 = 1.0;
  int dual_window = 100;    // accepted steps to average multipliers over
};

struct PgaOutcome {
  double value = 0.0;
  bool plateaued = false;   // stopped by flat objective or stationarity
  int iters = 0;
  /// Multipliers mu/t averaged over the last dual_window accepted steps;
  /// empty when the projector exposes no state duals.
  std::vector<std::vector<double>> avg_duals;
};

/// Projected gradient ascent with backtracking line search on a concave
/// objective. Obj must provide value(const BlockVars&) -> double and
/// grad(const BlockVars&, BlockVars&). Proj must provide project(BlockVars&)
/// and duals(). x is updated in place and stays feasible.
template <class Obj, class Proj>
PgaOutcome project_gradient_ascent(Obj& obj, Proj& proj, BlockVars& x,
                                   const PgaOptions& opt) {
  PgaOutcome out;
  proj.project(x);
  double f = obj.value(x);
  BlockVars g = zero_like(x), cand = zero_like(x);
  std::vector<double> hist;
  hist.reserve(opt.window + 1);
  double t = opt.step0;

  std::vector<std::vector<std::vector<double>>> dual_ring;

  int it = 0;
  for (; it < opt.max_iters; ++it) {
    obj.grad(x, g);
    double gnorm = bv_sup_norm(g);
    if (!(gnorm > 0.0)) {
      out.plateaued = true;
      break;
    }
    bool stepped = false;
    double step_used = t;
    for (int trial = 0; trial < 60; ++trial) {
      bv_copy(x, cand);
      bv_axpy(t, g, cand);
      proj.project(cand);
      // displacement and the Armijo-type sufficient increase test
      double gd = 0.0, dn = 0.0;
      for (std::size_t i = 0; i < cand.size(); ++i)
        for (std::size_t b = 0; b < cand[i].size(); ++b)
          for (std::size_t k = 0; k < cand[i][b].dim(); ++k) {
            double d = cand[i][b][k] - x[i][b][k];
            gd += g[i][b][k] * d;
            dn += d * d;
          }
      if (dn <= 1e-30) {
        t *= 0.5;
        if (t < 1e-18) break;
        continue;
      }
      double fc = obj.value(cand);
      if (fc >= f + 1e-4 * gd && fc > f - 1e-30) {
        std::swap(x, cand);
        f = fc;
        step_used = t;
        t = std::min(t * 1.3, 1e12);
        stepped = true;
        break;
      }
      t *= 0.5;
      if (t < 1e-18) break;
    }
    if (!stepped) {
      out.plateaued = true;
      break;
    }
    if (!proj.duals().empty()) {
      // record mu/t of the accepted projection for dual averaging
      std::vector<std::vector<double>> snap = proj.duals();
      for (auto& row : snap)
        for (double& v : row) v /= step_used;
      dual_ring.push_back(std::move(snap));
      if (static_cast<int>(dual_ring.size()) > opt.dual_window)
        dual_ring.erase(dual_ring.begin());
    }
    hist.push_back(f);
    if (static_cast<int>(hist.size()) > opt.window + 1)
      hist.erase(hist.begin());
    if (static_cast<int>(hist.size()) == opt.window + 1) {
      double then = hist.front();
      if (std::abs(f - then) <= opt.rel_tol * std::max(1.0, std::abs(f))) {
        out.plateaued = true;
        ++it;
        break;
      }
    }
  }
  out.iters = it;
  out.value = f;
  if (!dual_ring.empty()) {
    auto& avg = out.avg_duals;
    avg.assign(dual_ring[0].size(),
               std::vector<double>(dual_ring[0][0].size(), 0.0));
    for (const auto& snap : dual_ring)
      for (std::size_t s = 0; s < snap.size(); ++s)
        for (std::size_t k = 0; k < snap[s].size(); ++k)
          avg[s][k] += snap[s][k] / static_cast<double>(dual_ring.size());
  }
  return out;
}

} // namespace radner::optim

#endif
