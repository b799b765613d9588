#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace oracles {

using namespace radner;

Bundle cd_demand(const std::vector<double>& w, const std::vector<double>& p,
                 double wealth) {
  if (w.size() != p.size())
    throw std::invalid_argument("cd_demand: weight/price size mismatch");
  double wsum = 0.0;
  for (double wk : w) wsum += wk;
  Bundle x(w.size());
  for (std::size_t k = 0; k < w.size(); ++k)
    x[k] = (w[k] / wsum) * wealth / p[k];
  return x;
}

Economy edgeworth_economy() {
  Economy e;
  e.states = StateSpace({"s0"});
  e.dim = 2;
  StateUtility u;
  u.form = UtilityForm::CobbDouglas;
  u.weights = {0.5, 0.5};
  Agent a;
  a.partition = Partition::trivial(1);
  a.utility.per_state = {u};
  a.prior = Prior({1.0});
  a.endowment_blocks = {Bundle{1.0, 0.0}};
  e.agents.push_back(a);
  a.endowment_blocks = {Bundle{0.0, 1.0}};
  e.agents.push_back(a);
  e.validate();
  return e;
}

Allocation edgeworth_allocation() {
  Allocation x;
  RandomBundle half(1, 2);
  half.at(0) = Bundle{0.5, 0.5};
  x.plans = {half, half};
  return x;
}

PriceSystem edgeworth_prices() {
  PriceSystem p;
  p.pi = {DualVector{0.5, 0.5}};
  return p;
}

namespace {

double grid_extreme(const DualVector& f, const DualVector& g, const Bundle& x,
                    std::size_t points, bool maximize) {
  if (points < 2) throw std::invalid_argument("grid_extreme: need two levels");
  const std::size_t l = x.dim();
  std::vector<std::size_t> idx(l, 0);
  double best = maximize ? -1e300 : 1e300;
  while (true) {
    double v = 0.0;
    for (std::size_t k = 0; k < l; ++k) {
      double yk = x[k] * static_cast<double>(idx[k]) /
                  static_cast<double>(points - 1);
      v += f[k] * yk + g[k] * (x[k] - yk);
    }
    best = maximize ? std::max(best, v) : std::min(best, v);
    std::size_t k = l;
    while (k > 0 && ++idx[k - 1] == points) idx[--k] = 0;
    if (k == 0) break;
  }
  return best;
}

} // namespace

double rk_sup_grid(const DualVector& f, const DualVector& g, const Bundle& x,
                   std::size_t points) {
  return grid_extreme(f, g, x, points, true);
}

double rk_inf_grid(const DualVector& f, const DualVector& g, const Bundle& x,
                   std::size_t points) {
  return grid_extreme(f, g, x, points, false);
}

bool riesz_parts_ok(const std::vector<Bundle>& z, const std::vector<Bundle>& y,
                    const Bundle& floor, const std::vector<Bundle>& parts,
                    double tol, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (parts.size() != z.size()) return fail("part count mismatch");
  const std::size_t l = floor.dim();
  for (std::size_t k = 0; k < l; ++k) {
    double zt = 0.0, pt = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      zt += z[i][k];
      pt += parts[i][k];
      if (parts[i][k] < floor[k] - tol) {
        std::ostringstream os;
        os << "part " << i << " coordinate " << k << " below the floor";
        return fail(os.str());
      }
      if (parts[i][k] > y[i][k] + tol) {
        std::ostringstream os;
        os << "part " << i << " coordinate " << k << " above its cap";
        return fail(os.str());
      }
    }
    if (std::abs(zt - pt) > tol) {
      std::ostringstream os;
      os << "coordinate " << k << " total drifted by " << std::abs(zt - pt);
      return fail(os.str());
    }
  }
  return true;
}

namespace {

// Measurable grid plans for one agent of a single-good economy: one value
// per partition block, levels {0, step, ...} plus the block's own cap.
std::vector<double> block_levels(double cap, double step) {
  std::vector<double> lv;
  for (double v = 0.0; v < cap; v += step) lv.push_back(v);
  lv.push_back(cap);
  return lv;
}

double gain(const Economy& e, std::size_t i, const RandomBundle& y,
            const Allocation& x) {
  return expected_utility(e, i, y) - expected_utility(e, i, x.plans[i]);
}

// Largest plan measurable for `part` under the per-state remainder room:
// each block takes the minimum room over its states.
RandomBundle measurable_remainder(const Partition& part,
                                  const std::vector<double>& room) {
  RandomBundle y(room.size(), 1);
  for (std::size_t b = 0; b < part.n_blocks(); ++b) {
    double v = 1e300;
    for (std::size_t s : part.block(b)) v = std::min(v, room[s]);
    v = std::max(v, 0.0);
    for (std::size_t s : part.block(b)) y.at(s)[0] = v;
  }
  return y;
}

} // namespace

TinyVerdict tiny_grid_blocking(const Economy& e, const Allocation& x,
                               double step, double tol) {
  if (e.n_agents() != 2 || e.dim != 1 || e.n_states() != 2)
    throw std::invalid_argument(
        "tiny_grid_blocking: built for two agents, one good, two states");
  TinyVerdict out;

  std::vector<RandomBundle> endow = {e.agents[0].endowment(),
                                     e.agents[1].endowment()};

  // Singletons: the coalition resource is the agent's own endowment, and
  // the endowment itself is measurable, so it bounds every grid plan. The
  // grid is scanned anyway so the oracle stays a plain search.
  for (std::size_t i = 0; i < 2; ++i) {
    const Partition& part = e.agents[i].partition;
    std::vector<std::vector<double>> levels;
    for (std::size_t b = 0; b < part.n_blocks(); ++b)
      levels.push_back(block_levels(endow[i].at(part.block(b)[0])[0], step));
    std::vector<std::size_t> idx(levels.size(), 0);
    while (true) {
      RandomBundle y(2, 1);
      for (std::size_t b = 0; b < levels.size(); ++b)
        for (std::size_t s : part.block(b)) y.at(s)[0] = levels[b][idx[b]];
      double d = gain(e, i, y, x);
      out.delta = std::max(out.delta, d);
      std::size_t b = levels.size();
      while (b > 0 && ++idx[b - 1] == levels[b - 1].size()) idx[--b] = 0;
      if (b == 0) break;
    }
  }

  // Grand coalition: enumerate one agent's measurable grid plans against
  // the per-state cap, give the other agent the largest measurable
  // remainder, and take the better of the two directions.
  std::vector<double> cap(2);
  for (std::size_t s = 0; s < 2; ++s)
    cap[s] = endow[0].at(s)[0] + endow[1].at(s)[0];
  for (std::size_t lead = 0; lead < 2; ++lead) {
    const std::size_t follow = 1 - lead;
    const Partition& lp = e.agents[lead].partition;
    std::vector<std::vector<double>> levels;
    for (std::size_t b = 0; b < lp.n_blocks(); ++b) {
      double ceil = 1e300;
      for (std::size_t s : lp.block(b)) ceil = std::min(ceil, cap[s]);
      levels.push_back(block_levels(ceil, step));
    }
    std::vector<std::size_t> idx(levels.size(), 0);
    while (true) {
      RandomBundle yl(2, 1);
      for (std::size_t b = 0; b < levels.size(); ++b)
        for (std::size_t s : lp.block(b)) yl.at(s)[0] = levels[b][idx[b]];
      std::vector<double> room(2);
      for (std::size_t s = 0; s < 2; ++s) room[s] = cap[s] - yl.at(s)[0];
      RandomBundle yf = measurable_remainder(e.agents[follow].partition, room);
      double d = std::min(gain(e, lead, yl, x), gain(e, follow, yf, x));
      out.delta = std::max(out.delta, d);
      std::size_t b = levels.size();
      while (b > 0 && ++idx[b - 1] == levels[b - 1].size()) idx[--b] = 0;
      if (b == 0) break;
    }
  }

  out.blocks = out.delta > tol;
  return out;
}

const std::vector<ChartRow>& chart_rows() {
  static const std::vector<ChartRow> rows = {
      {{SpaceFamily::Rn, 0.0}, "Rn",
       "interior: yes, quasi-interior: yes, theorems 1,4,5,6"},
      {{SpaceFamily::EllInfinity, 0.0}, "ell_infinity",
       "interior: yes, quasi-interior: yes, theorems 1,4,5,6"},
      {{SpaceFamily::LInfinity, 0.0}, "L_infinity",
       "interior: yes, quasi-interior: yes, theorems 1,4,5,6"},
      {{SpaceFamily::CK, 0.0}, "C_K",
       "interior: yes, quasi-interior: yes, theorems 1,4,5,6"},
      {{SpaceFamily::EllP, 2.0}, "ell_p",
       "interior: no, quasi-interior: yes, theorems 2,4, remarks 4,6"},
      {{SpaceFamily::LP, 1.5}, "L_p",
       "interior: no, quasi-interior: yes, theorems 2,4, remarks 4,6"},
      {{SpaceFamily::MKUncountable, 0.0}, "M_K",
       "interior: no, quasi-interior: no, theorems 3,4, remarks 4,6"},
  };
  return rows;
}

} // namespace oracles
