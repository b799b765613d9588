#include "radner/blocking.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "radner/parallel.hpp"

namespace radner {

namespace {

using optim::BlockVars;

// ---------------------------------------------------------------------------
// the soft-min objective with an exact-margin best tracker

struct SoftMinObjective {
  const MaxMinSpec* spec;
  double tau = 1e-1;

  // best-by-exact-min over every point evaluated (all are feasible)
  BlockVars best_y;
  std::vector<double> best_margins;
  double best_delta = -1e300;

  mutable std::vector<double> margins_ws;
  mutable std::vector<Bundle> grad_ws;

  double exact_margins(const BlockVars& v, std::vector<double>& m) const {
    const std::size_t n = spec->members.size();
    m.resize(n);
    double mn = 1e300;
    for (std::size_t i = 0; i < n; ++i) {
      m[i] = expected_utility_on(*spec->econ, spec->members[i], spec->parts[i],
                                 v[i]) -
             spec->targets[i];
      mn = std::min(mn, m[i]);
    }
    return mn;
  }

  double value(const BlockVars& v) {
    double mn = exact_margins(v, margins_ws);
    if (mn > best_delta) {
      best_delta = mn;
      best_margins = margins_ws;
      best_y = v;
    }
    // soft minimum: mn - tau * log sum exp(-(m_i - mn)/tau)
    double acc = 0.0;
    for (double m : margins_ws) acc += std::exp(-(m - mn) / tau);
    return mn - tau * std::log(acc);
  }

  void grad(const BlockVars& v, BlockVars& g) {
    const std::size_t n = spec->members.size();
    double mn = exact_margins(v, margins_ws);
    double acc = 0.0;
    std::vector<double> wts(n);
    for (std::size_t i = 0; i < n; ++i) {
      wts[i] = std::exp(-(margins_ws[i] - mn) / tau);
      acc += wts[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      double sigma = wts[i] / acc;
      expected_utility_grad_on(*spec->econ, spec->members[i], spec->parts[i],
                               v[i], grad_ws);
      for (std::size_t b = 0; b < g[i].size(); ++b)
        for (std::size_t k = 0; k < g[i][b].dim(); ++k)
          g[i][b][k] = sigma * grad_ws[b][k];
    }
  }
};

BlockVars endowment_start(const MaxMinSpec& spec) {
  // each member starts from its own endowment, re-expressed on the
  // constraint partition (exact: endowments are measurable, and the
  // constraint partition is never coarser than the agent's own)
  BlockVars v(spec.members.size());
  for (std::size_t i = 0; i < spec.members.size(); ++i) {
    const Agent& a = spec.econ->agents[spec.members[i]];
    RandomBundle endow = a.endowment();
    const Partition& p = spec.parts[i];
    v[i].resize(p.n_blocks());
    for (std::size_t b = 0; b < p.n_blocks(); ++b)
      v[i][b] = endow.at(p.block(b)[0]);
  }
  return v;
}

} // namespace

MaxMinOutcome solve_maxmin(const MaxMinSpec& spec, const BlockingConfig& cfg,
                           const std::vector<optim::BlockVars>* user_starts) {
  if (spec.members.empty())
    throw std::invalid_argument("solve_maxmin: empty coalition");

  optim::Projector proj(spec.parts, spec.weights, spec.caps);
  // margins at candidate points are re-evaluated exactly, so the projection
  // itself can afford a loose dual tolerance; this is where scans over many
  // weight points spend nearly all of their time
  proj.relax(1e-9, 150);

  SoftMinObjective obj;
  obj.spec = &spec;

  optim::PgaOptions popt;
  popt.max_iters = cfg.max_iters_per_stage;
  popt.window = cfg.stage_window;
  popt.rel_tol = cfg.stage_rel_tol;

  std::vector<BlockVars> starts;
  if (user_starts != nullptr && !user_starts->empty()) {
    starts = *user_starts;
    for (BlockVars& s : starts) proj.project(s);
  } else {
    starts.push_back(endowment_start(spec));
    starts.push_back(proj.feasible_start());
  }

  bool final_stage_plateaued = false;
  for (BlockVars& start : starts) {
    BlockVars y = start;
    bool plateaued = false;
    double stage_gain = 0.0;
    for (double tau = cfg.tau_start; tau >= cfg.tau_end * 0.999;
         tau *= cfg.tau_factor) {
      obj.tau = tau;
      double before = obj.best_delta;
      auto out = optim::project_gradient_ascent(obj, proj, y, popt);
      plateaued = out.plateaued;
      stage_gain = obj.best_delta - before;
      if (cfg.early_stop_margin > 0.0 && obj.best_delta > cfg.early_stop_margin)
        break;
    }
    // the soft objective can crawl along a kink without tripping the
    // window test; when a whole stage no longer moves the exact min, the
    // reported value has converged even if the smoothed surrogate has not
    if (!plateaued &&
        stage_gain <= 1e-9 * std::max(1.0, std::abs(obj.best_delta)))
      plateaued = true;
    final_stage_plateaued = final_stage_plateaued || plateaued;
    if (cfg.early_stop_margin > 0.0 && obj.best_delta > cfg.early_stop_margin) {
      final_stage_plateaued = true;
      break;
    }
  }

  MaxMinOutcome out;
  out.y = obj.best_y;
  out.margins = obj.best_margins;
  out.delta = obj.best_delta;
  out.converged = final_stage_plateaued;
  return out;
}

// ---------------------------------------------------------------------------
// coalition plumbing

Coalition Coalition::grand(std::size_t n_agents) {
  Coalition c;
  c.members.resize(n_agents);
  for (std::size_t i = 0; i < n_agents; ++i) c.members[i] = i;
  return c;
}

Coalition Coalition::from_mask(std::uint64_t mask) {
  Coalition c;
  for (std::size_t i = 0; mask != 0; ++i, mask >>= 1)
    if (mask & 1u) c.members.push_back(i);
  return c;
}

std::uint64_t Coalition::mask() const {
  std::uint64_t m = 0;
  for (std::size_t i : members) m |= (std::uint64_t{1} << i);
  return m;
}

void Coalition::validate(std::size_t n_agents) const {
  if (members.empty())
    throw std::invalid_argument("coalition: empty");
  for (std::size_t j = 0; j < members.size(); ++j) {
    if (members[j] >= n_agents)
      throw std::invalid_argument("coalition: member index out of range");
    if (j > 0 && members[j] <= members[j - 1])
      throw std::invalid_argument("coalition: members must be sorted and distinct");
  }
}

std::string AubinPolicy::describe() const {
  std::ostringstream os;
  os << "dyadic=" << dyadic_depth << ",refine=" << refine_rounds
     << ",probes=" << refine_probes << ",near=" << near_complete_delta;
  return os.str();
}

namespace {

void require_targets_shape(const Economy& e, const Allocation& x) {
  if (x.n_agents() != e.n_agents())
    throw std::invalid_argument("blocking: allocation agent count mismatch");
  for (const RandomBundle& plan : x.plans)
    if (plan.n_states() != e.n_states() || plan.dim() != e.dim)
      throw std::invalid_argument("blocking: plan shape mismatch");
}

MaxMinSpec weighted_spec(const Economy& e, const Coalition& S,
                         const std::vector<double>& alpha, const Allocation& x,
                         MeasurabilityMode mode) {
  MaxMinSpec spec;
  spec.econ = &e;
  spec.members = S.members;
  Partition pooled;
  if (mode == MeasurabilityMode::Pooled) {
    std::vector<Partition> parts;
    for (const Agent& a : e.agents) parts.push_back(a.partition);
    pooled = join(parts);
  }
  RandomBundle caps(e.n_states(), e.dim);
  for (std::size_t j = 0; j < S.members.size(); ++j) {
    std::size_t i = S.members[j];
    spec.targets.push_back(expected_utility(e, i, x.plans[i]));
    spec.parts.push_back(mode == MeasurabilityMode::Pooled
                             ? pooled
                             : e.agents[i].partition);
    spec.weights.push_back(alpha[j]);
    caps = add(caps, scale(alpha[j], e.agents[i].endowment()));
  }
  spec.caps = std::move(caps);
  return spec;
}

BlockResult run_block(const Economy& e, const Coalition& S,
                      const std::vector<double>& alpha, const Allocation& x,
                      double tol, const BlockingConfig& cfg,
                      MeasurabilityMode mode,
                      const optim::BlockVars* warm = nullptr,
                      optim::BlockVars* y_out = nullptr) {
  MaxMinSpec spec = weighted_spec(e, S, alpha, x, mode);
  std::vector<optim::BlockVars> starts;
  if (warm != nullptr) starts.push_back(*warm);
  MaxMinOutcome sol = solve_maxmin(spec, cfg, starts.empty() ? nullptr : &starts);
  if (y_out != nullptr) *y_out = sol.y;

  BlockResult res;
  res.delta = sol.delta;
  if (sol.delta > tol) {
    BlockingCertificate cert;
    cert.coalition = S;
    cert.weights = alpha;
    cert.mode = mode;
    cert.margins = sol.margins;
    cert.delta = sol.delta;
    for (std::size_t j = 0; j < S.members.size(); ++j)
      cert.bundles.push_back(RandomBundle::from_blocks(spec.parts[j], sol.y[j]));
    cert.slack = spec.caps;
    for (std::size_t j = 0; j < S.members.size(); ++j)
      cert.slack = sub(cert.slack, scale(alpha[j], cert.bundles[j]));
    std::string why;
    if (!validate_certificate(e, x, cert, tol, &why)) {
      // the solver's own point failed re-validation: demote to indeterminate
      res.verdict = BlockVerdict::Indeterminate;
      res.note = "certificate re-validation failed: " + why;
      return res;
    }
    res.verdict = BlockVerdict::Blocks;
    res.certificate = std::move(cert);
    return res;
  }
  res.verdict = sol.converged ? BlockVerdict::None : BlockVerdict::Indeterminate;
  if (!sol.converged) res.note = "inner solver hit its iteration cap";
  return res;
}

} // namespace

BlockResult private_block(const Economy& e, const Coalition& S,
                          const Allocation& x, double tol,
                          const BlockingConfig& cfg) {
  e.validate();
  S.validate(e.n_agents());
  require_targets_shape(e, x);
  std::vector<double> ones(S.members.size(), 1.0);
  return run_block(e, S, ones, x, tol, cfg, MeasurabilityMode::Private);
}

BlockResult privately_dominated(const Economy& e, const Allocation& x,
                                double tol, const BlockingConfig& cfg) {
  return private_block(e, Coalition::grand(e.n_agents()), x, tol, cfg);
}

CoreResult private_core_membership(const Economy& e, const Allocation& x,
                                   double tol, const BlockingConfig& cfg) {
  e.validate();
  require_targets_shape(e, x);
  if (e.n_agents() > 20)
    throw std::invalid_argument(
        "private_core_membership: coalition enumeration is bounded at 20 agents");
  if (!is_feasible(e, x, 1e-9))
    throw std::invalid_argument("private_core_membership: allocation infeasible");

  const std::uint64_t total = (std::uint64_t{1} << e.n_agents()) - 1;
  CoreResult res;
  res.coalitions_checked = total;

  // chunked scan in ascending mask order: parallel inside a chunk, stop at
  // the first chunk containing a certificate (lowest mask wins), so the
  // outcome is independent of the thread count
  std::size_t chunk = std::max<std::size_t>(8, 4 * parallel::threads());
  std::vector<BlockResult> slot(chunk);
  bool any_indeterminate = false;
  std::string indet_note;
  for (std::uint64_t base = 1; base <= total; base += chunk) {
    std::size_t count =
        static_cast<std::size_t>(std::min<std::uint64_t>(chunk, total - base + 1));
    parallel::parallel_for(count, [&](std::size_t j) {
      Coalition S = Coalition::from_mask(base + j);
      slot[j] = private_block(e, S, x, tol, cfg);
    });
    for (std::size_t j = 0; j < count; ++j) {
      if (slot[j].verdict == BlockVerdict::Blocks) {
        res.verdict = BlockVerdict::Blocks;
        res.certificate = slot[j].certificate;
        return res;
      }
      if (slot[j].verdict == BlockVerdict::Indeterminate) {
        any_indeterminate = true;
        if (indet_note.empty())
          indet_note = "coalition mask " + std::to_string(base + j) + ": " +
                       slot[j].note;
      }
    }
  }
  if (any_indeterminate) {
    res.verdict = BlockVerdict::Indeterminate;
    res.note = indet_note;
  } else {
    res.verdict = BlockVerdict::None;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Aubin search

namespace {

struct WeightPoint {
  Coalition S;
  std::vector<double> alpha;
};

std::vector<WeightPoint> aubin_grid(const Economy& e, const AubinPolicy& pol) {
  std::vector<WeightPoint> pts;
  const std::size_t n = e.n_agents();
  Coalition grand = Coalition::grand(n);

  // distinguished profiles first: unweighted grand coalition, then the
  // near-complete profile
  pts.push_back({grand, std::vector<double>(n, 1.0)});
  pts.push_back({grand, std::vector<double>(n, 1.0 - pol.near_complete_delta)});

  std::vector<double> levels;
  for (int d = 0; d <= pol.dyadic_depth; ++d)
    levels.push_back(std::ldexp(1.0, -d));

  const std::uint64_t total = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t mask = 1; mask <= total; ++mask) {
    Coalition S = Coalition::from_mask(mask);
    std::size_t m = S.members.size();
    std::vector<std::size_t> idx(m, 0);
    while (true) {
      std::vector<double> alpha(m);
      for (std::size_t j = 0; j < m; ++j) alpha[j] = levels[idx[j]];
      pts.push_back({S, std::move(alpha)});
      std::size_t j = 0;
      while (j < m && ++idx[j] == levels.size()) idx[j++] = 0;
      if (j == m) break;
    }
  }
  return pts;
}

} // namespace

namespace {

// Cheap upper bound on the weighted max-min margin: by monotonicity no
// member can beat consuming the entire weighted cap alone, so when even
// that keeps some member at or below tol the point cannot block and the
// solve is skipped. Pure function of the point, so scans stay
// deterministic under any scheduling.
double aubin_point_bound(const Economy& e, const Coalition& S,
                         const std::vector<double>& alpha,
                         const Allocation& x) {
  RandomBundle caps(e.n_states(), e.dim);
  for (std::size_t j = 0; j < S.members.size(); ++j)
    caps = add(caps, scale(alpha[j], e.agents[S.members[j]].endowment()));
  double bound = 1e300;
  for (std::size_t j = 0; j < S.members.size(); ++j) {
    std::size_t i = S.members[j];
    RandomBundle all = scale(1.0 / alpha[j], caps);
    double b = expected_utility(e, i, all) - expected_utility(e, i, x.plans[i]);
    bound = std::min(bound, b);
  }
  return bound;
}

} // namespace

BlockResult aubin_block(const Economy& e, const Allocation& x, double tol,
                        const AubinPolicy& policy, const BlockingConfig& cfg) {
  e.validate();
  require_targets_shape(e, x);

  std::vector<WeightPoint> pts = aubin_grid(e, policy);
  std::vector<BlockResult> results(pts.size());
  std::vector<optim::BlockVars> sols(pts.size());
  std::vector<char> pruned(pts.size(), 0);

  // scan coalition groups in order; inside a group, chunks run in
  // parallel and the best solution of the finished chunks warm-starts the
  // next chunk (the inner program is concave, so starts only affect speed)
  std::size_t chunk = std::max<std::size_t>(8, 4 * parallel::threads());
  bool any_indeterminate = false;
  double best_delta = -1e300;
  double prune_bound = -1e300;
  std::size_t best_idx = 0;
  std::size_t solved = 0, skipped = 0;
  for (std::size_t lo = 0; lo < pts.size();) {
    std::size_t hi = lo + 1;
    while (hi < pts.size() && pts[hi].S == pts[lo].S) ++hi;

    optim::BlockVars warm;
    bool have_warm = false;
    double group_best = -1e300;
    for (std::size_t base = lo; base < hi; base += chunk) {
      std::size_t count = std::min(chunk, hi - base);
      parallel::parallel_for(count, [&](std::size_t j) {
        const WeightPoint& wp = pts[base + j];
        double bound = aubin_point_bound(e, wp.S, wp.alpha, x);
        if (bound <= tol) {
          pruned[base + j] = 1;
          results[base + j].verdict = BlockVerdict::None;
          results[base + j].delta = bound;
          return;
        }
        results[base + j] =
            run_block(e, wp.S, wp.alpha, x, tol, cfg,
                      MeasurabilityMode::Private,
                      have_warm ? &warm : nullptr, &sols[base + j]);
      });
      for (std::size_t j = 0; j < count; ++j) {
        const BlockResult& r = results[base + j];
        if (pruned[base + j]) {
          ++skipped;
          prune_bound = std::max(prune_bound, r.delta);
          continue;
        }
        ++solved;
        if (r.verdict == BlockVerdict::Blocks) {
          BlockResult out = r;
          out.note = "policy " + policy.describe();
          return out;
        }
        if (r.verdict == BlockVerdict::Indeterminate) any_indeterminate = true;
        if (r.delta > best_delta) {
          best_delta = r.delta;
          best_idx = base + j;
        }
        if (r.delta > group_best) {
          group_best = r.delta;
          warm = sols[base + j];
          have_warm = true;
        }
      }
    }
    lo = hi;
  }

  // coordinate-descent refinement of the weights around the best grid
  // point; skipped when the cap bound disposed of every point, since the
  // bound is itself a proof that no point can block
  if (solved > 0) {
    WeightPoint best = pts[best_idx];
    optim::BlockVars refine_warm = sols[best_idx];
    double spacing = std::ldexp(1.0, -policy.dyadic_depth);
    for (int round = 0; round < policy.refine_rounds; ++round) {
      double step = spacing / std::ldexp(1.0, round);
      for (std::size_t j = 0; j < best.alpha.size(); ++j) {
        for (int probe = 0; probe < policy.refine_probes; ++probe) {
          double delta_step = (probe % 2 == 0 ? 1.0 : -1.0) *
                              step / std::ldexp(1.0, probe / 2);
          double cand = best.alpha[j] + delta_step;
          if (!(cand > 0.0 && cand <= 1.0)) continue;
          std::vector<double> alpha = best.alpha;
          alpha[j] = cand;
          optim::BlockVars y;
          BlockResult r = run_block(e, best.S, alpha, x, tol, cfg,
                                    MeasurabilityMode::Private,
                                    &refine_warm, &y);
          if (r.verdict == BlockVerdict::Blocks) {
            r.note = "policy " + policy.describe() + " (refined)";
            return r;
          }
          if (r.verdict == BlockVerdict::Indeterminate) any_indeterminate = true;
          if (r.delta > best_delta) {
            best_delta = r.delta;
            best.alpha = alpha;
            refine_warm = y;
          }
        }
      }
    }
  }

  BlockResult res;
  res.delta = (solved > 0) ? best_delta : prune_bound;
  std::ostringstream counts;
  counts << " (" << solved << " solved, " << skipped
         << " skipped by the cap bound)";
  if (any_indeterminate) {
    res.verdict = BlockVerdict::Indeterminate;
    res.note = "some inner solves were indeterminate under policy " +
               policy.describe() + counts.str();
  } else {
    res.verdict = BlockVerdict::None;
    res.note = "none-found under policy " + policy.describe() + counts.str();
  }
  return res;
}

// ---------------------------------------------------------------------------
// validation

bool validate_certificate(const Economy& e, const Allocation& x,
                          const BlockingCertificate& cert, double tol,
                          std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  try {
    cert.coalition.validate(e.n_agents());
  } catch (const std::exception& ex) {
    return fail(ex.what());
  }
  const std::size_t m = cert.coalition.members.size();
  if (cert.weights.size() != m || cert.bundles.size() != m ||
      cert.margins.size() != m)
    return fail("certificate field sizes disagree with the coalition");

  Partition pooled;
  if (cert.mode == MeasurabilityMode::Pooled) {
    std::vector<Partition> parts;
    for (const Agent& a : e.agents) parts.push_back(a.partition);
    pooled = join(parts);
  }

  RandomBundle used(e.n_states(), e.dim), avail(e.n_states(), e.dim);
  double min_margin = 1e300;
  for (std::size_t j = 0; j < m; ++j) {
    std::size_t i = cert.coalition.members[j];
    double w = cert.weights[j];
    if (!(w > 0.0 && w <= 1.0)) return fail("weight outside (0,1]");
    const RandomBundle& y = cert.bundles[j];
    if (y.n_states() != e.n_states() || y.dim() != e.dim)
      return fail("bundle shape mismatch");
    if (!is_nonneg(y, 0.0)) return fail("bundle has a negative coordinate");
    const Partition& p = cert.mode == MeasurabilityMode::Pooled
                             ? pooled
                             : e.agents[i].partition;
    if (!is_measurable(y, p, 1e-9)) return fail("bundle not measurable");
    used = add(used, scale(w, y));
    avail = add(avail, scale(w, e.agents[i].endowment()));
    double margin = expected_utility(e, i, y) - expected_utility(e, i, x.plans[i]);
    min_margin = std::min(min_margin, margin);
  }
  if (!leq(used, avail, tol))
    return fail("weighted resource constraint violated");
  if (!(min_margin > tol / 2))
    return fail("re-evaluated margin does not clear tol/2");
  return true;
}

// ---------------------------------------------------------------------------
// per-state and pooled-information domination

ExPostResult ex_post_block(const Economy& e, const Allocation& x, double tol,
                           const BlockingConfig& cfg) {
  e.validate();
  require_targets_shape(e, x);
  if (e.n_agents() > 20)
    throw std::invalid_argument(
        "ex_post_block: coalition enumeration is bounded at 20 agents");

  // complete-information restrictions, one per state
  std::vector<Economy> restricted;
  restricted.reserve(e.n_states());
  for (std::size_t s = 0; s < e.n_states(); ++s)
    restricted.push_back(state_restriction(e, s));

  const std::uint64_t total = (std::uint64_t{1} << e.n_agents()) - 1;
  bool any_indeterminate = false;
  std::string indet_note;

  struct PerCoalition {
    std::vector<std::size_t> event;
    std::vector<std::vector<Bundle>> bundles;
    std::vector<std::vector<double>> margins;
    bool indeterminate = false;
  };

  std::size_t chunk = std::max<std::size_t>(4, 2 * parallel::threads());
  std::vector<PerCoalition> slot(chunk);
  for (std::uint64_t base = 1; base <= total; base += chunk) {
    std::size_t count =
        static_cast<std::size_t>(std::min<std::uint64_t>(chunk, total - base + 1));
    parallel::parallel_for(count, [&](std::size_t j) {
      Coalition S = Coalition::from_mask(base + j);
      PerCoalition pc;
      for (std::size_t s = 0; s < e.n_states(); ++s) {
        Allocation xs;
        for (std::size_t i = 0; i < e.n_agents(); ++i)
          xs.plans.push_back(RandomBundle::constant(1, x.plans[i].at(s)));
        BlockResult r = private_block(restricted[s], S, xs, tol, cfg);
        if (r.verdict == BlockVerdict::Blocks) {
          pc.event.push_back(s);
          std::vector<Bundle> bs;
          std::vector<double> ms;
          for (std::size_t mj = 0; mj < S.members.size(); ++mj) {
            bs.push_back(r.certificate->bundles[mj].at(0));
            ms.push_back(r.certificate->margins[mj]);
          }
          pc.bundles.push_back(std::move(bs));
          pc.margins.push_back(std::move(ms));
        } else if (r.verdict == BlockVerdict::Indeterminate) {
          pc.indeterminate = true;
        }
      }
      slot[j] = std::move(pc);
    });
    for (std::size_t j = 0; j < count; ++j) {
      if (!slot[j].event.empty()) {
        ExPostResult res;
        res.verdict = BlockVerdict::Blocks;
        ExPostCertificate cert;
        cert.coalition = Coalition::from_mask(base + j);
        cert.event = slot[j].event;
        cert.state_bundles = slot[j].bundles;
        cert.state_margins = slot[j].margins;
        res.certificate = std::move(cert);
        return res;
      }
      if (slot[j].indeterminate && indet_note.empty()) {
        any_indeterminate = true;
        indet_note =
            "coalition mask " + std::to_string(base + j) + " was indeterminate";
      }
    }
  }

  ExPostResult res;
  if (any_indeterminate) {
    res.verdict = BlockVerdict::Indeterminate;
    res.note = indet_note;
  } else {
    res.verdict = BlockVerdict::None;
  }
  return res;
}

BlockResult fine_dominate(const Economy& e, const Allocation& x, bool weak,
                          double tol, const BlockingConfig& cfg) {
  e.validate();
  require_targets_shape(e, x);

  std::vector<Partition> parts;
  for (const Agent& a : e.agents) parts.push_back(a.partition);
  Partition pooled = join(parts);
  for (std::size_t i = 0; i < e.n_agents(); ++i) {
    const Partition& required = weak ? pooled : e.agents[i].partition;
    if (!is_measurable(x.plans[i], required, 1e-9))
      throw std::invalid_argument(
          (weak ? std::string("weak ") : std::string()) +
          "fine domination: plan " + std::to_string(i) +
          " fails the required measurability");
  }

  Coalition grand = Coalition::grand(e.n_agents());
  std::vector<double> ones(e.n_agents(), 1.0);
  return run_block(e, grand, ones, x, tol, cfg, MeasurabilityMode::Pooled);
}

} // namespace radner
