#include "radner/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace radner::optim {

BlockVars zero_like(const BlockVars& v) {
  BlockVars z(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    z[i].reserve(v[i].size());
    for (const Bundle& b : v[i]) z[i].emplace_back(b.dim());
  }
  return z;
}

void bv_copy(const BlockVars& src, BlockVars& dst) { dst = src; }

void bv_axpy(double s, const BlockVars& g, BlockVars& dst) {
  for (std::size_t i = 0; i < dst.size(); ++i)
    for (std::size_t b = 0; b < dst[i].size(); ++b)
      for (std::size_t k = 0; k < dst[i][b].dim(); ++k)
        dst[i][b][k] += s * g[i][b][k];
}

double bv_dot(const BlockVars& a, const BlockVars& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t bb = 0; bb < a[i].size(); ++bb)
      for (std::size_t k = 0; k < a[i][bb].dim(); ++k)
        s += a[i][bb][k] * b[i][bb][k];
  return s;
}

double bv_sup_norm(const BlockVars& a) {
  double m = 0.0;
  for (const auto& slot : a)
    for (const Bundle& b : slot) m = std::max(m, sup_norm(b));
  return m;
}

double knapsack_multiplier(const std::vector<double>& p,
                           const std::vector<double>& w, double cap) {
  double at_zero = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    at_zero += w[i] * std::max(p[i], 0.0);
  if (at_zero <= cap) return 0.0;

  // g(mu) = sum_{p_i > w_i mu} w_i (p_i - w_i mu) is piecewise linear and
  // decreasing; walk its kinks from the largest threshold downward. This
  // sits on the innermost path of every projection, so small coalitions
  // (the only kind the enumeration bound allows) stay on the stack.
  std::size_t stack_order[20];
  std::vector<std::size_t> big;
  std::size_t* order = stack_order;
  if (p.size() > 20) {
    big.resize(p.size());
    order = big.data();
  }
  std::size_t m = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) order[m++] = i;
  std::sort(order, order + m, [&](std::size_t a, std::size_t b) {
    return p[a] / w[a] > p[b] / w[b];
  });

  double swp = 0.0, sw2 = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    std::size_t i = order[j];
    swp += w[i] * p[i];
    sw2 += w[i] * w[i];
    double lower = (j + 1 < m) ? p[order[j + 1]] / w[order[j + 1]] : 0.0;
    // on [lower, theta_j] the active set is order[0..j]
    double mu = (swp - cap) / sw2;
    if (mu >= lower - 1e-18) return std::max(mu, 0.0);
  }
  // cap < 0 cannot happen (caps are nonnegative); defensively pin to the
  // largest threshold, which zeroes every variable.
  return m == 0 ? 0.0 : p[order[0]] / w[order[0]];
}

Projector::Projector(std::vector<Partition> parts, std::vector<double> weights,
                     RandomBundle caps)
    : parts_(std::move(parts)), weights_(std::move(weights)),
      caps_(std::move(caps)) {
  if (parts_.size() != weights_.size() || parts_.empty())
    throw std::invalid_argument("projector: slot mismatch");
  for (double w : weights_)
    if (!(w > 0.0)) throw std::invalid_argument("projector: weights must be positive");
  for (const Partition& p : parts_)
    if (p.n_states() != caps_.n_states())
      throw std::invalid_argument("projector: partition state count mismatch");
  if (!is_nonneg(caps_))
    throw std::invalid_argument("projector: caps must be nonnegative");
  mu_.assign(caps_.n_states(), std::vector<double>(caps_.dim(), 0.0));
  cap_scale_ = std::max(1.0, sup_norm(caps_));
}

void Projector::project(BlockVars& v) {
  const std::size_t n_states = caps_.n_states();
  const std::size_t dim = caps_.dim();
  const std::size_t slots = parts_.size();
  if (v.size() != slots)
    throw std::invalid_argument("project: slot count mismatch");

  // Per coordinate, coordinate ascent on the dual of the projection QP.
  std::vector<double> p(slots), w(weights_.begin(), weights_.end());
  std::vector<std::vector<double>> block_load(slots);
  for (std::size_t i = 0; i < slots; ++i)
    block_load[i].resize(parts_[i].n_blocks());
  for (std::size_t k = 0; k < dim; ++k) {
    // block loads under the warm-started multipliers
    for (std::size_t i = 0; i < slots; ++i) {
      std::fill(block_load[i].begin(), block_load[i].end(), 0.0);
      for (std::size_t s = 0; s < n_states; ++s)
        block_load[i][parts_[i].block_of(s)] += mu_[s][k];
    }
    auto var_value = [&](std::size_t i, std::size_t b) {
      return std::max(0.0, v[i][b][k] - weights_[i] * block_load[i][b]);
    };

    for (int sweep = 0; sweep < max_sweeps_; ++sweep) {
      double worst = 0.0;
      for (std::size_t s = 0; s < n_states; ++s) {
        double old_mu = mu_[s][k];
        for (std::size_t i = 0; i < slots; ++i) {
          std::size_t b = parts_[i].block_of(s);
          p[i] = v[i][b][k] - weights_[i] * (block_load[i][b] - old_mu);
        }
        double nu = knapsack_multiplier(p, w, caps_.at(s)[k]);
        if (nu != old_mu) {
          double d = nu - old_mu;
          mu_[s][k] = nu;
          for (std::size_t i = 0; i < slots; ++i)
            block_load[i][parts_[i].block_of(s)] += d;
          worst = std::max(worst, std::fabs(d));
        }
      }
      if (worst <= tol_ * cap_scale_) break;
    }

    // write the projected values back, then enforce the caps hard: clamp
    // zero-cap coordinates and apply one global scale-down for any residual
    // violation left by the dual tolerance.
    for (std::size_t i = 0; i < slots; ++i)
      for (std::size_t b = 0; b < parts_[i].n_blocks(); ++b)
        v[i][b][k] = var_value(i, b);

    double scale_up = 1.0;
    for (std::size_t s = 0; s < n_states; ++s) {
      double total = 0.0;
      for (std::size_t i = 0; i < slots; ++i)
        total += weights_[i] * v[i][parts_[i].block_of(s)][k];
      double cap = caps_.at(s)[k];
      if (cap <= 0.0) {
        if (total > 0.0)
          for (std::size_t i = 0; i < slots; ++i)
            v[i][parts_[i].block_of(s)][k] = 0.0;
      } else if (total > cap) {
        scale_up = std::max(scale_up, total / cap);
      }
    }
    if (scale_up > 1.0) {
      double shrink = 1.0 / scale_up;
      for (std::size_t i = 0; i < slots; ++i)
        for (std::size_t b = 0; b < parts_[i].n_blocks(); ++b)
          v[i][b][k] *= shrink;
    }
  }
}

BlockVars Projector::feasible_start() {
  double wsum = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  BlockVars v(parts_.size());
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    v[i].assign(parts_[i].n_blocks(), Bundle(caps_.dim()));
    for (std::size_t b = 0; b < parts_[i].n_blocks(); ++b) {
      const auto& states = parts_[i].block(b);
      for (std::size_t k = 0; k < caps_.dim(); ++k) {
        double lo = caps_.at(states[0])[k];
        for (std::size_t s : states) lo = std::min(lo, caps_.at(s)[k]);
        v[i][b][k] = lo / wsum;
      }
    }
  }
  project(v);
  return v;
}

BudgetProjector::BudgetProjector(std::vector<std::vector<Bundle>> block_prices,
                                 double wealth)
    : prices_(std::move(block_prices)), wealth_(wealth) {
  if (!(wealth_ >= 0.0))
    throw std::invalid_argument("budget projector: negative wealth");
}

void BudgetProjector::project(BlockVars& v) {
  // one flat knapsack over every (slot, block, coordinate) with its price
  std::vector<double> p, w;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t b = 0; b < v[i].size(); ++b)
      for (std::size_t k = 0; k < v[i][b].dim(); ++k) {
        double price = prices_[i][b][k];
        if (price > 0.0) {
          p.push_back(v[i][b][k]);
          w.push_back(price);
        } else {
          // free coordinate: only the nonnegativity bound applies
          v[i][b][k] = std::max(v[i][b][k], 0.0);
        }
      }
  double mu = knapsack_multiplier(p, w, wealth_);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t b = 0; b < v[i].size(); ++b)
      for (std::size_t k = 0; k < v[i][b].dim(); ++k) {
        double price = prices_[i][b][k];
        if (price > 0.0) {
          v[i][b][k] = std::max(0.0, p[idx] - price * mu);
          ++idx;
        }
      }
}

} // namespace radner::optim
