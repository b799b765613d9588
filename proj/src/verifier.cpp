#include "radner/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "radner/generate.hpp"
#include "radner/io.hpp"
#include "radner/parallel.hpp"

namespace radner {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return std::string(buf);
}

std::string fmt_r(const std::vector<double>& r) {
  std::string s = "(";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) s += ",";
    s += fmt(r[i]);
  }
  return s + ")";
}

// Gate on the audit entries a suite relies on. An entry passes unless it
// outright fails; the irreducibility entry in particular may be undecided
// without blocking a suite, because every suite re-verifies its conclusion
// directly instead of leaning on the sufficient condition.
bool audit_gate(const Economy& e, const std::vector<std::string>& required,
                std::string* missing) {
  AuditReport rep = audit_assumptions(e);
  std::string bad;
  for (const std::string& name : required) {
    const AuditEntry* en = rep.find(name);
    if (en == nullptr || en->verdict == AuditVerdict::Fails) {
      if (!bad.empty()) bad += ", ";
      bad += name;
    }
  }
  if (bad.empty()) return true;
  if (missing) *missing = bad;
  return false;
}

TheoremReport base_report(const char* theorem, const Economy& e) {
  TheoremReport rep;
  rep.theorem = theorem;
  rep.digest = io::economy_digest(e);
  return rep;
}

void require_shape(const Economy& e, const Allocation& x, const char* who) {
  e.validate();
  if (x.n_agents() != e.n_agents())
    throw std::invalid_argument(std::string(who) +
                                ": allocation and economy disagree on the agent count");
  for (std::size_t i = 0; i < x.n_agents(); ++i)
    if (x.plans[i].n_states() != e.n_states() || x.plans[i].dim() != e.dim)
      throw std::invalid_argument(std::string(who) + ": plan shape mismatch");
}

bool admissible_all(const Economy& e, const Allocation& x) {
  for (std::size_t i = 0; i < e.n_agents(); ++i)
    if (!plan_admissible(e, i, x.plans[i], 1e-9)) return false;
  return true;
}

// Solve prices seeded at x and verify (x, prices) independently.
struct Probe {
  EquilibriumCertificate cert;
  EquilibriumReport at_x;
  double alloc_dist = 0.0;
};

Probe probe_at(const Economy& e, const Allocation& x, const VerifyOptions& opt) {
  Probe p;
  NegishiOptions no = opt.negishi;
  no.tol = opt.tol;
  no.start = x;
  p.cert = solve_equilibrium(e, no);
  p.at_x = verify_equilibrium(e, x, p.cert.prices, opt.tol);
  double d = 0.0;
  for (std::size_t i = 0; i < x.n_agents(); ++i)
    for (std::size_t s = 0; s < e.n_states(); ++s)
      d = std::max(d, sup_norm(sub(x.plans[i].at(s),
                                   p.cert.allocation.plans[i].at(s))));
  p.alloc_dist = d;
  return p;
}

void check_grid_entries(const Economy& e,
                        const std::vector<std::vector<double>>& grid,
                        const char* who) {
  for (const std::vector<double>& r : grid) {
    if (r.size() != e.n_agents())
      throw std::invalid_argument(std::string(who) + ": perturbation size mismatch");
    for (double v : r)
      if (!(v >= 0.0 && v <= 1.0))
        throw std::invalid_argument(std::string(who) +
                                    ": perturbation entries must lie in [0,1]");
  }
}

std::string grid_policy(const Economy& e,
                        const std::vector<std::vector<double>>& supplied,
                        std::size_t used, const VerifyOptions& opt) {
  if (!supplied.empty())
    return "caller grid of " + std::to_string(supplied.size()) + " points";
  return "dyadic{0,1/4,1/2,3/4,1}^" + std::to_string(e.n_agents()) + " cap " +
         std::to_string(opt.grid_cap) + " plus " + std::to_string(opt.random_r) +
         " random (seed " + std::to_string(opt.seed) + "), " +
         std::to_string(used) + " points total";
}

template <typename Fn>
std::vector<BlockResult> scan_grid(const std::vector<std::vector<double>>& grid,
                                   Fn&& fn) {
  std::vector<BlockResult> out(grid.size());
  parallel::parallel_for(grid.size(),
                         [&](std::size_t gi) { out[gi] = fn(grid[gi]); });
  return out;
}

// Forward-direction reduction over grid scan results. Returns true when a
// decisive verdict (candidate or indeterminate) was written; otherwise the
// grid is clean and a summary evidence line was appended.
bool reduce_forward(TheoremReport& rep,
                    const std::vector<std::vector<double>>& grid,
                    const std::vector<BlockResult>& res, const char* what) {
  for (std::size_t gi = 0; gi < grid.size(); ++gi)
    if (res[gi].verdict == BlockVerdict::Blocks) {
      rep.verdict = SuiteVerdict::CounterexampleCandidate;
      rep.certificate = res[gi].certificate;
      rep.certificate_r = grid[gi];
      rep.evidence.push_back(std::string(what) + " certificate at r=" +
                             fmt_r(grid[gi]) + " with margin " +
                             fmt(res[gi].certificate->delta));
      return true;
    }
  std::size_t und = 0;
  double best = -1e300;
  for (const BlockResult& br : res) {
    if (br.verdict == BlockVerdict::Indeterminate) ++und;
    best = std::max(best, br.delta);
  }
  if (und > 0) {
    rep.verdict = SuiteVerdict::Indeterminate;
    rep.note = std::to_string(und) + " of " + std::to_string(grid.size()) +
               " grid points hit the solver's iteration cap; no certificate found";
    return true;
  }
  rep.evidence.push_back("grid clean over " + std::to_string(grid.size()) +
                         " perturbations; best search margin " + fmt(best));
  return false;
}

// Converse search order: near-complete perturbations first.
std::vector<std::size_t> converse_order(const std::vector<std::vector<double>>& grid) {
  std::vector<std::size_t> order(grid.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     double ma = *std::min_element(grid[a].begin(), grid[a].end());
                     double mb = *std::min_element(grid[b].begin(), grid[b].end());
                     if (ma != mb) return ma > mb;
                     double sa = 0.0, sb = 0.0;
                     for (double v : grid[a]) sa += v;
                     for (double v : grid[b]) sb += v;
                     if (sa != sb) return sa > sb;
                     return a < b;
                   });
  return order;
}

// The constructive converse path shared by the perturbation suites: lift a
// blocking certificate through the continuum (shrink for slack, resize to a
// near-complete mass, mix toward x) into a grand-coalition domination
// certificate of the perturbed economy at participation rates close to 1.
struct Lift {
  std::vector<double> r;
  BlockingCertificate cert;
  std::vector<std::string> evidence;
};

std::optional<Lift> lift_to_near_complete(const Economy& e, const Allocation& x,
                                          const BlockingCertificate& base,
                                          const VerifyOptions& opt,
                                          std::string* why) {
  const std::size_t n = e.n_agents();
  StepAllocation xc = to_continuum(x);
  ContinuumBlockingCertificate shrunk;
  try {
    shrunk = lemma_shrink(e, to_continuum_certificate(e, base), xc);
  } catch (const std::exception& ex) {
    if (why) *why = std::string("slack shrink: ") + ex.what();
    return std::nullopt;
  }
  const double m = 1.0 - 1.0 / (opt.near_complete_scale * static_cast<double>(n));
  ResizeOutcome ro;
  try {
    ro = vind_resize_to_measure(e, shrunk, xc, m);
  } catch (const std::exception& ex) {
    if (why) *why = std::string("mass resize: ") + ex.what();
    return std::nullopt;
  }
  std::string w;
  if (!validate_continuum_certificate(e, xc, ro.certificate, opt.tol, &w)) {
    if (why) *why = "resize validation: " + w;
    return std::nullopt;
  }

  Lift lift;
  lift.r.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    lift.r[i] = std::min(1.0, static_cast<double>(n) * ro.certificate.profile.mass[i]);
    if (lift.r[i] <= 0.0) {
      if (why)
        *why = "participation: type " + std::to_string(i) + " received zero mass";
      return std::nullopt;
    }
  }

  BlockingCertificate g;
  g.coalition = Coalition::grand(n);
  g.weights.assign(n, 1.0);
  g.mode = MeasurabilityMode::Private;
  g.bundles.resize(n);
  g.margins.resize(n);
  double delta = 1e300;
  for (std::size_t i = 0; i < n; ++i) {
    RandomBundle bi = x.plans[i];
    for (std::size_t s = 0; s < e.n_states(); ++s)
      bi.at(s) = add(scale(lift.r[i], ro.certificate.bundles[i].at(s)),
                     scale(1.0 - lift.r[i], x.plans[i].at(s)));
    g.margins[i] = expected_utility(e, i, bi) - expected_utility(e, i, x.plans[i]);
    delta = std::min(delta, g.margins[i]);
    g.bundles[i] = std::move(bi);
  }
  g.delta = delta;

  Economy pe = perturbed_economy(e, lift.r, x);
  g.slack = pe.aggregate_endowment();
  for (std::size_t i = 0; i < n; ++i) g.slack = sub(g.slack, g.bundles[i]);
  if (!validate_certificate(pe, x, g, opt.tol, &w)) {
    if (why) *why = "assembled certificate: " + w;
    return std::nullopt;
  }

  double rmin = *std::min_element(lift.r.begin(), lift.r.end());
  double rmax = *std::max_element(lift.r.begin(), lift.r.end());
  lift.evidence.push_back("base certificate: coalition of " +
                          std::to_string(base.coalition.members.size()) +
                          " with margin " + fmt(base.delta));
  lift.evidence.push_back("resize: " + ro.note);
  lift.evidence.push_back("participation rates in [" + fmt(rmin) + ", " +
                          fmt(rmax) + "]");
  lift.evidence.push_back("assembled domination margin " + fmt(g.delta));
  lift.cert = std::move(g);
  return lift;
}

// The event-witness construction: per-state certificates on the pooled
// block of the anchor state, shrunk and resized state by state, averaged
// into one constant bundle per type on the block, then mixed toward x.
std::optional<Lift> build_event_lift(const Economy& e, const Allocation& x,
                                     const ExPostCertificate& w,
                                     const VerifyOptions& opt,
                                     std::string* why) {
  const std::size_t n = e.n_agents();
  std::vector<Partition> parts;
  for (const Agent& a : e.agents) parts.push_back(a.partition);
  Partition pooled = join(parts);

  const std::size_t s0 = w.event.front();
  const std::vector<std::size_t>& block = pooled.block(pooled.block_of(s0));
  for (std::size_t s : block)
    if (!std::binary_search(w.event.begin(), w.event.end(), s)) {
      if (why)
        *why = "event coverage: the witness event misses state " +
               e.states.labels[s] + " of the pooled block";
      return std::nullopt;
    }

  std::vector<double> last_r;
  auto attempt = [&](double m, std::string* awhy) -> std::optional<Lift> {
    std::vector<double> r(n, 0.0);
    std::vector<Bundle> avg(n, Bundle(e.dim));
    bool anchored = false;
    for (std::size_t s : block) {
      Economy es = state_restriction(e, s);
      Allocation xs;
      xs.plans.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        RandomBundle p(1, e.dim);
        p.at(0) = x.plans[i].at(s);
        xs.plans[i] = std::move(p);
      }
      std::size_t ei = SIZE_MAX;
      for (std::size_t k = 0; k < w.event.size(); ++k)
        if (w.event[k] == s) ei = k;
      BlockingCertificate sc;
      sc.coalition = w.coalition;
      sc.weights.assign(w.coalition.members.size(), 1.0);
      sc.mode = MeasurabilityMode::Private;
      sc.margins = w.state_margins[ei];
      sc.delta = *std::min_element(sc.margins.begin(), sc.margins.end());
      for (const Bundle& y : w.state_bundles[ei]) {
        RandomBundle p(1, e.dim);
        p.at(0) = y;
        sc.bundles.push_back(std::move(p));
      }

      StepAllocation xsc = to_continuum(xs);
      ContinuumBlockingCertificate shrunk;
      try {
        shrunk = lemma_shrink(es, to_continuum_certificate(es, sc), xsc);
      } catch (const std::exception& ex) {
        *awhy = "slack shrink at state " + e.states.labels[s] + ": " + ex.what();
        return std::nullopt;
      }
      ResizeOutcome ro;
      try {
        ro = vind_resize_to_measure(es, shrunk, xsc, m);
      } catch (const std::exception& ex) {
        *awhy = "mass resize at state " + e.states.labels[s] + ": " + ex.what();
        return std::nullopt;
      }
      std::string ws;
      if (!validate_continuum_certificate(es, xsc, ro.certificate, opt.tol, &ws)) {
        *awhy = "resize validation at state " + e.states.labels[s] + ": " + ws;
        return std::nullopt;
      }
      if (!anchored) {
        for (std::size_t i = 0; i < n; ++i)
          r[i] = std::min(
              1.0, static_cast<double>(n) * ro.certificate.profile.mass[i]);
        anchored = true;
      }
      for (std::size_t i = 0; i < n; ++i)
        avg[i] = add(avg[i], ro.certificate.bundles[i].at(0));
    }
    for (std::size_t i = 0; i < n; ++i) {
      avg[i] = scale(1.0 / static_cast<double>(block.size()), avg[i]);
      if (r[i] <= 0.0) {
        *awhy = "participation: type " + std::to_string(i) + " received zero mass";
        return std::nullopt;
      }
    }
    last_r = r;

    Lift lift;
    lift.r = r;
    BlockingCertificate g;
    g.coalition = Coalition::grand(n);
    g.weights.assign(n, 1.0);
    g.mode = MeasurabilityMode::Pooled;
    g.bundles.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      RandomBundle bi = x.plans[i];
      for (std::size_t s : block)
        bi.at(s) = add(scale(r[i], avg[i]), scale(1.0 - r[i], x.plans[i].at(s)));
      g.bundles[i] = std::move(bi);
    }
    // Off the block everyone keeps x, but with uneven participation the
    // perturbed aggregate endowment can fall short of aggregate x there.
    // Trim the shortfall from the net buyers whose scaled positions caused
    // it, in proportion to r_i * (x_i - a_i)_+, which keeps every bundle
    // at or above the agent's perturbed endowment. The trim is state-local
    // arithmetic on block-constant data, so measurability is preserved.
    double worst_trim = 0.0;
    std::vector<RandomBundle> endow;
    endow.reserve(n);
    for (std::size_t i = 0; i < n; ++i) endow.push_back(e.agents[i].endowment());
    for (std::size_t s = 0; s < e.n_states(); ++s) {
      if (std::binary_search(block.begin(), block.end(), s)) continue;
      for (std::size_t k = 0; k < e.dim; ++k) {
        double viol = 0.0, pos = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double net = x.plans[i].at(s)[k] - endow[i].at(s)[k];
          viol += r[i] * net;
          pos += r[i] * std::max(0.0, net);
        }
        if (viol <= 0.0) continue;
        worst_trim = std::max(worst_trim, viol);
        for (std::size_t i = 0; i < n; ++i) {
          const double net = x.plans[i].at(s)[k] - endow[i].at(s)[k];
          if (net > 0.0)
            g.bundles[i].at(s)[k] -= viol * r[i] * net / pos;
        }
      }
    }
    g.margins.resize(n);
    double delta = 1e300;
    for (std::size_t i = 0; i < n; ++i) {
      g.margins[i] = expected_utility(e, i, g.bundles[i]) -
                     expected_utility(e, i, x.plans[i]);
      delta = std::min(delta, g.margins[i]);
    }
    g.delta = delta;
    Economy pe = perturbed_economy(e, r, x);
    g.slack = pe.aggregate_endowment();
    for (std::size_t i = 0; i < n; ++i) g.slack = sub(g.slack, g.bundles[i]);
    std::string ws;
    if (!validate_certificate(pe, x, g, opt.tol, &ws)) {
      *awhy = "assembled certificate: " + ws;
      return std::nullopt;
    }

    lift.evidence.push_back("pooled block of " + std::to_string(block.size()) +
                            " state(s) anchored at " + e.states.labels[s0]);
    double rmin = *std::min_element(r.begin(), r.end());
    double rmax = *std::max_element(r.begin(), r.end());
    lift.evidence.push_back("participation rates in [" + fmt(rmin) + ", " +
                            fmt(rmax) + "]");
    if (worst_trim > 0.0)
      lift.evidence.push_back("off-event holdings trimmed by up to " +
                              fmt(worst_trim) + " to restore feasibility");
    lift.evidence.push_back("assembled pooled domination margin " +
                            fmt(g.delta));
    lift.cert = std::move(g);
    return lift;
  };

  const double m0 =
      1.0 - 1.0 / (opt.near_complete_scale * static_cast<double>(n));
  // both the on-event gain and the off-event trim scale with the distance
  // to a complete coalition, so no single measure dominates; scan a few
  const double candidates[] = {m0,
                               1.0 - (1.0 - m0) * 0.25,
                               1.0 - (1.0 - m0) * 0.0625,
                               0.875,
                               0.75,
                               0.625};
  std::string awhy;
  for (double m : candidates) {
    if (m <= 0.0 || m >= 1.0) continue;
    std::optional<Lift> lift = attempt(m, &awhy);
    if (lift) return lift;
  }
  // The mixing construction can fail even though the perturbed economy it
  // targets is genuinely dominated: the mix ties everyone's gain to the
  // same witness. Ask the solver for any valid certificate there instead.
  if (!last_r.empty()) {
    Economy pe = perturbed_economy(e, last_r, x);
    BlockResult br = fine_dominate(pe, x, false, opt.tol);
    if (br.verdict == BlockVerdict::Blocks && br.certificate) {
      std::string ws;
      if (validate_certificate(pe, x, *br.certificate, opt.tol, &ws)) {
        Lift lift;
        lift.r = last_r;
        lift.cert = *br.certificate;
        lift.evidence.push_back("mixing construction failed (" + awhy + ")");
        lift.evidence.push_back(
            "direct domination search in the perturbed economy, margin " +
            fmt(lift.cert.delta));
        return lift;
      }
    }
  }
  if (why) *why = awhy;
  return std::nullopt;
}

} // namespace

std::vector<std::vector<double>> default_r_grid(const Economy& e,
                                                const VerifyOptions& opt) {
  static constexpr double kLevels[5] = {0.0, 0.25, 0.5, 0.75, 1.0};
  const std::size_t n = e.n_agents();
  std::vector<std::vector<double>> grid;
  std::vector<std::size_t> idx(n, 0);
  while (grid.size() < opt.grid_cap) {
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = kLevels[idx[i]];
    grid.push_back(std::move(r));
    std::size_t i = n;
    while (i > 0 && ++idx[i - 1] == 5) idx[--i] = 0;
    if (i == 0) break;
  }
  Rng rng(opt.seed + 0x9e3779b97f4a7c15ULL);
  for (std::size_t k = 0; k < opt.random_r; ++k) {
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = rng.uniform();
    grid.push_back(std::move(r));
  }
  return grid;
}

TheoremReport check_theorem5(const Economy& e, const Allocation& x,
                             const VerifyOptions& opt) {
  require_shape(e, x, "check_theorem5");
  TheoremReport rep = base_report("T5", e);
  rep.policy = "aubin(" + opt.policy.describe() + "); solver-seeded converse";
  std::string missing;
  if (!audit_gate(e,
                  {"utility-regularity", "aggregate-strict", "agent-positivity",
                   "irreducibility"},
                  &missing)) {
    rep.direction = "both";
    rep.note = "hypotheses unmet: " + missing;
    return rep;
  }

  Probe pr = probe_at(e, x, opt);
  BlockResult ab = aubin_block(e, x, opt.tol, opt.policy, opt.blocking);

  if (pr.at_x.full_ok) {
    rep.direction = "forward";
    rep.evidence.push_back("solved prices verify x at the full standard");
    if (ab.verdict == BlockVerdict::None) {
      rep.verdict = SuiteVerdict::Confirmed;
      rep.evidence.push_back("weighted domination search empty; best margin " +
                             fmt(ab.delta));
    } else if (ab.verdict == BlockVerdict::Blocks) {
      rep.verdict = SuiteVerdict::CounterexampleCandidate;
      rep.certificate = ab.certificate;
      rep.evidence.push_back(
          "weighted domination certificate against a verified equilibrium, margin " +
          fmt(ab.certificate->delta));
    } else {
      rep.note = "weighted domination search indeterminate: " + ab.note;
    }
    return rep;
  }

  rep.direction = "converse";
  if (ab.verdict == BlockVerdict::Blocks) {
    rep.verdict = SuiteVerdict::Confirmed;
    rep.certificate = ab.certificate;
    rep.evidence.push_back("weighted domination certificate with margin " +
                           fmt(ab.certificate->delta) +
                           "; x not supported as Walrasian (allocation distance " +
                           fmt(pr.alloc_dist) + "): consistent");
    return rep;
  }
  if (ab.verdict == BlockVerdict::Indeterminate) {
    rep.note = "weighted domination search indeterminate: " + ab.note;
    return rep;
  }
  if (pr.at_x.quasi_ok && !pr.at_x.full_ok) {
    rep.note =
        "x verifies only at the quasi standard with the solved prices; converse "
        "support undecided";
    return rep;
  }
  double worst_gap = 0.0;
  for (double gspend : pr.at_x.budget_gap) worst_gap = std::max(worst_gap, gspend);
  rep.note = "no weighted domination found under the policy, but the seeded solve "
             "did not support x (allocation distance " +
             fmt(pr.alloc_dist) + ", worst budget gap " + fmt(worst_gap) +
             "); the search is policy-bounded, so this is inconclusive";
  return rep;
}

TheoremReport check_theorem6(const Economy& e, const Allocation& x,
                             const std::vector<std::vector<double>>& r_grid,
                             const VerifyOptions& opt) {
  require_shape(e, x, "check_theorem6");
  check_grid_entries(e, r_grid, "check_theorem6");
  TheoremReport rep = base_report("T6", e);
  std::string missing;
  if (!audit_gate(e,
                  {"utility-regularity", "aggregate-strict", "agent-positivity",
                   "irreducibility"},
                  &missing)) {
    rep.direction = "both";
    rep.note = "hypotheses unmet: " + missing;
    return rep;
  }

  std::vector<std::vector<double>> grid =
      r_grid.empty() ? default_r_grid(e, opt) : r_grid;
  rep.policy = grid_policy(e, r_grid, grid.size(), opt);

  bool at_endowment = true;
  for (std::size_t i = 0; i < e.n_agents(); ++i)
    if (!(x.plans[i] == e.agents[i].endowment())) at_endowment = false;
  if (at_endowment) {
    grid.assign(1, std::vector<double>(e.n_agents(), 1.0));
    rep.evidence.push_back(
        "x equals the endowment allocation, so the perturbed family is constant; "
        "a single grid point decides all of them");
  }

  Probe pr = probe_at(e, x, opt);
  if (pr.at_x.full_ok) {
    rep.direction = "forward";
    rep.evidence.push_back("solved prices verify x at the full standard");
    std::vector<BlockResult> res =
        scan_grid(grid, [&](const std::vector<double>& r) {
          Economy pe = perturbed_economy(e, r, x);
          return privately_dominated(pe, x, opt.tol, opt.blocking);
        });
    if (!reduce_forward(rep, grid, res, "grand-coalition domination"))
      rep.verdict = SuiteVerdict::Confirmed;
    return rep;
  }

  rep.direction = "converse";
  if (!is_feasible(e, x, opt.tol)) {
    rep.note = "x is not feasible; the converse needs a feasible non-equilibrium "
               "allocation";
    return rep;
  }
  if (!admissible_all(e, x)) {
    rep.note = "x is not admissible (nonnegative measurable plans required)";
    return rep;
  }

  CoreResult core = private_core_membership(e, x, opt.tol, opt.blocking);
  if (core.verdict == BlockVerdict::Blocks) {
    std::string why;
    std::optional<Lift> lift =
        lift_to_near_complete(e, x, *core.certificate, opt, &why);
    if (lift) {
      rep.verdict = SuiteVerdict::Confirmed;
      rep.certificate = lift->cert;
      rep.certificate_r = lift->r;
      for (std::string& line : lift->evidence) rep.evidence.push_back(std::move(line));
      rep.evidence.push_back("dominating perturbation r=" + fmt_r(lift->r));
      return rep;
    }
    rep.evidence.push_back("near-complete construction unavailable (" + why +
                           "); falling back to the grid");
  } else if (core.verdict == BlockVerdict::Indeterminate) {
    rep.evidence.push_back("core scan indeterminate: " + core.note);
  } else {
    rep.evidence.push_back(
        "no coalition blocks x directly; searching the perturbed family");
  }

  std::size_t und = 0;
  for (std::size_t oi : converse_order(grid)) {
    Economy pe = perturbed_economy(e, grid[oi], x);
    BlockResult br = privately_dominated(pe, x, opt.tol, opt.blocking);
    if (br.verdict == BlockVerdict::Blocks) {
      rep.verdict = SuiteVerdict::Confirmed;
      rep.certificate = br.certificate;
      rep.certificate_r = grid[oi];
      rep.evidence.push_back("dominating perturbation found at r=" +
                             fmt_r(grid[oi]) + " with margin " +
                             fmt(br.certificate->delta));
      return rep;
    }
    if (br.verdict == BlockVerdict::Indeterminate) ++und;
  }
  rep.note = "no dominating perturbation found over " +
             std::to_string(grid.size()) + " grid points (" +
             std::to_string(und) +
             " indeterminate); the search is policy-bounded";
  return rep;
}

TheoremReport check_theorem7(const Economy& e, const Allocation& x,
                             const std::vector<std::vector<double>>& r_grid,
                             const VerifyOptions& opt) {
  require_shape(e, x, "check_theorem7");
  check_grid_entries(e, r_grid, "check_theorem7");
  TheoremReport rep = base_report("T7", e);
  std::string missing;
  if (!audit_gate(e, {"utility-regularity", "aggregate-nonzero", "agent-positivity"},
                  &missing)) {
    rep.direction = "both";
    rep.note = "hypotheses unmet: " + missing;
    return rep;
  }
  if (!admissible_all(e, x)) {
    rep.note = "x is not admissible (nonnegative measurable plans required)";
    return rep;
  }
  if (!is_feasible(e, x, opt.tol)) {
    rep.note = "x is not feasible";
    return rep;
  }

  ExPostResult ep = ex_post_block(e, x, opt.tol, opt.blocking);
  if (ep.verdict == BlockVerdict::Indeterminate) {
    rep.note = "event blocking scan indeterminate: " + ep.note;
    return rep;
  }

  if (ep.verdict == BlockVerdict::Blocks) {
    rep.direction = "forward";
    rep.policy = "event witness construction, near-complete scale " +
                 fmt(opt.near_complete_scale);
    const ExPostCertificate& w = *ep.certificate;
    rep.evidence.push_back("event witness: coalition of " +
                           std::to_string(w.coalition.members.size()) +
                           " blocking on " + std::to_string(w.event.size()) +
                           " state(s)");
    std::string why;
    std::optional<Lift> built = build_event_lift(e, x, w, opt, &why);
    if (!built) {
      rep.note = "construction failed at " + why;
      return rep;
    }
    for (std::string& line : built->evidence) rep.evidence.push_back(std::move(line));
    Economy pe = perturbed_economy(e, built->r, x);
    BlockResult fd = fine_dominate(pe, x, false, opt.tol, opt.blocking);
    if (fd.verdict == BlockVerdict::Blocks) {
      rep.verdict = SuiteVerdict::Confirmed;
      rep.certificate = built->cert;
      rep.certificate_r = built->r;
      rep.evidence.push_back("pooled domination search agrees (margin " +
                             fmt(fd.certificate->delta) + ")");
    } else {
      rep.note = std::string("constructed certificate validated, but the pooled "
                             "domination search returned ") +
                 (fd.verdict == BlockVerdict::None ? "none" : "indeterminate") +
                 "; inconsistent search";
    }
    return rep;
  }

  rep.direction = "converse";
  std::vector<std::vector<double>> grid =
      r_grid.empty() ? default_r_grid(e, opt) : r_grid;
  rep.policy = grid_policy(e, r_grid, grid.size(), opt);
  rep.evidence.push_back("no event witness over the full coalition scan");
  std::vector<BlockResult> res = scan_grid(grid, [&](const std::vector<double>& r) {
    Economy pe = perturbed_economy(e, r, x);
    return fine_dominate(pe, x, false, opt.tol, opt.blocking);
  });
  if (!reduce_forward(rep, grid, res, "pooled-information domination"))
    rep.verdict = SuiteVerdict::Confirmed;
  return rep;
}

TheoremReport check_theorem8(const Economy& e, const Allocation& x,
                             const std::vector<std::vector<double>>& r_grid,
                             const VerifyOptions& opt) {
  require_shape(e, x, "check_theorem8");
  check_grid_entries(e, r_grid, "check_theorem8");
  TheoremReport rep = base_report("T8", e);
  std::string missing;
  if (!audit_gate(e, {"utility-regularity", "aggregate-nonzero", "agent-positivity"},
                  &missing)) {
    rep.direction = "both";
    rep.note = "hypotheses unmet: " + missing;
    return rep;
  }
  if (!admissible_all(e, x)) {
    rep.note = "x is not admissible (nonnegative measurable plans required)";
    return rep;
  }
  if (!is_feasible(e, x, opt.tol)) {
    rep.note = "x is not feasible";
    return rep;
  }

  std::vector<std::vector<double>> grid =
      r_grid.empty() ? default_r_grid(e, opt) : r_grid;
  rep.policy = grid_policy(e, r_grid, grid.size(), opt);

  CoreResult core = private_core_membership(e, x, opt.tol, opt.blocking);
  if (core.verdict == BlockVerdict::Indeterminate) {
    rep.note = "core scan indeterminate: " + core.note;
    return rep;
  }

  if (core.verdict == BlockVerdict::None) {
    rep.direction = "forward";
    rep.evidence.push_back("x is a private-core member (" +
                           std::to_string(core.coalitions_checked) +
                           " coalitions scanned)");
    std::vector<BlockResult> res =
        scan_grid(grid, [&](const std::vector<double>& r) {
          Economy pe = perturbed_economy(e, r, x);
          return privately_dominated(pe, x, opt.tol, opt.blocking);
        });
    if (!reduce_forward(rep, grid, res, "grand-coalition domination"))
      rep.verdict = SuiteVerdict::Confirmed;
    return rep;
  }

  rep.direction = "converse";
  rep.evidence.push_back("x is blocked (coalition of " +
                         std::to_string(core.certificate->coalition.members.size()) +
                         ", margin " + fmt(core.certificate->delta) + ")");
  std::string why;
  std::optional<Lift> lift = lift_to_near_complete(e, x, *core.certificate, opt, &why);
  if (lift) {
    rep.verdict = SuiteVerdict::Confirmed;
    rep.certificate = lift->cert;
    rep.certificate_r = lift->r;
    for (std::string& line : lift->evidence) rep.evidence.push_back(std::move(line));
    Economy pe = perturbed_economy(e, lift->r, x);
    BlockResult cross = privately_dominated(pe, x, opt.tol, opt.blocking);
    rep.evidence.push_back(std::string("domination search at the lifted point: ") +
                           (cross.verdict == BlockVerdict::Blocks
                                ? "certificate (margin " + fmt(cross.delta) + ")"
                                : cross.verdict == BlockVerdict::None
                                      ? "none (construction stands on its own)"
                                      : "indeterminate"));
    return rep;
  }
  rep.evidence.push_back("near-complete construction unavailable (" + why +
                         "); falling back to the grid");
  std::size_t und = 0;
  for (std::size_t oi : converse_order(grid)) {
    Economy pe = perturbed_economy(e, grid[oi], x);
    BlockResult br = privately_dominated(pe, x, opt.tol, opt.blocking);
    if (br.verdict == BlockVerdict::Blocks) {
      rep.verdict = SuiteVerdict::Confirmed;
      rep.certificate = br.certificate;
      rep.certificate_r = grid[oi];
      rep.evidence.push_back("dominating perturbation found at r=" +
                             fmt_r(grid[oi]) + " with margin " +
                             fmt(br.certificate->delta));
      return rep;
    }
    if (br.verdict == BlockVerdict::Indeterminate) ++und;
  }
  rep.note = "no dominating perturbation found over " + std::to_string(grid.size()) +
             " grid points (" + std::to_string(und) +
             " indeterminate); the search is policy-bounded";
  return rep;
}

TheoremReport check_corollary5(const Economy& e, const Allocation& x,
                               const std::vector<std::vector<double>>& r_grid,
                               const VerifyOptions& opt) {
  require_shape(e, x, "check_corollary5");
  check_grid_entries(e, r_grid, "check_corollary5");
  TheoremReport rep = base_report("C5", e);
  rep.direction = "both";
  std::string missing;
  if (!audit_gate(e, {"utility-regularity", "aggregate-nonzero", "agent-positivity"},
                  &missing)) {
    rep.note = "hypotheses unmet: " + missing;
    return rep;
  }
  std::vector<Partition> parts;
  for (const Agent& a : e.agents) parts.push_back(a.partition);
  Partition pooled = join(parts);
  for (std::size_t i = 0; i < e.n_agents(); ++i)
    if (!is_nonneg(x.plans[i], 0.0) || !is_measurable(x.plans[i], pooled, 1e-9)) {
      rep.note = "hypotheses unmet: x must be nonnegative and measurable for the "
                 "pooled partition";
      return rep;
    }
  if (!is_feasible(e, x, opt.tol)) {
    rep.note = "hypotheses unmet: x is not feasible";
    return rep;
  }

  std::vector<std::vector<double>> grid =
      r_grid.empty() ? default_r_grid(e, opt) : r_grid;
  rep.policy = grid_policy(e, r_grid, grid.size(), opt);

  Economy sym = symmetric_information_economy(e);
  CoreResult core = private_core_membership(sym, x, opt.tol, opt.blocking);
  if (core.verdict == BlockVerdict::Indeterminate) {
    rep.note = "pooled-twin core scan indeterminate: " + core.note;
    return rep;
  }
  rep.evidence.push_back(std::string("pooled-twin core membership: ") +
                         (core.verdict == BlockVerdict::None
                              ? "member"
                              : "blocked (margin " + fmt(core.certificate->delta) +
                                    ")"));

  // The domination scan runs in the twin so that the perturbed endowments
  // stay measurable; the weighted program only reads the aggregate
  // endowment, the utilities, and the pooled partition, and all three are
  // shared between the base economy and its twin.
  std::vector<BlockResult> res = scan_grid(grid, [&](const std::vector<double>& r) {
    Economy pe = perturbed_economy(sym, r, x);
    return fine_dominate(pe, x, true, opt.tol, opt.blocking);
  });

  std::size_t hit = SIZE_MAX, und = 0;
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    if (res[gi].verdict == BlockVerdict::Blocks && hit == SIZE_MAX) hit = gi;
    if (res[gi].verdict == BlockVerdict::Indeterminate) ++und;
  }

  if (core.verdict == BlockVerdict::None) {
    if (hit != SIZE_MAX) {
      rep.verdict = SuiteVerdict::CounterexampleCandidate;
      rep.certificate = res[hit].certificate;
      rep.certificate_r = grid[hit];
      rep.evidence.push_back(
          "pooled domination certificate at r=" + fmt_r(grid[hit]) +
          " though the twin holds x in its core: equivalence violated");
      return rep;
    }
    if (und > 0) {
      rep.note = std::to_string(und) + " of " + std::to_string(grid.size()) +
                 " grid points indeterminate; agreement not decided";
      return rep;
    }
    rep.verdict = SuiteVerdict::Confirmed;
    rep.evidence.push_back("perturbation scan clean over " +
                           std::to_string(grid.size()) +
                           " points: both sides non-dominated");
    return rep;
  }

  // twin core says blocked: the scan should find a dominated perturbation
  if (hit != SIZE_MAX) {
    rep.verdict = SuiteVerdict::Confirmed;
    rep.certificate = res[hit].certificate;
    rep.certificate_r = grid[hit];
    rep.evidence.push_back("pooled domination at r=" + fmt_r(grid[hit]) +
                           " (margin " + fmt(res[hit].certificate->delta) +
                           "): both sides dominated");
    return rep;
  }
  std::string why;
  std::optional<Lift> lift = lift_to_near_complete(sym, x, *core.certificate, opt, &why);
  if (lift) {
    rep.verdict = SuiteVerdict::Confirmed;
    rep.certificate = lift->cert;
    rep.certificate_r = lift->r;
    for (std::string& line : lift->evidence) rep.evidence.push_back(std::move(line));
    rep.evidence.push_back(
        "certificate constructed in the pooled twin at r=" + fmt_r(lift->r) +
        ": both sides dominated");
    return rep;
  }
  rep.note = "twin core is blocked but no dominated perturbation was found (" +
             std::to_string(und) + " indeterminate; lift failed at " + why +
             "); the search is policy-bounded";
  return rep;
}

TheoremReport check_proposition2(const Economy& e, const VerifyOptions& opt) {
  e.validate();
  TheoremReport rep = base_report("P2", e);
  rep.direction = "both";
  rep.policy = "solver round trip";
  std::string missing;
  if (!audit_gate(e, {"aggregate-nonzero"}, &missing)) {
    rep.note = "hypotheses unmet: " + missing;
    return rep;
  }

  NegishiOptions no = opt.negishi;
  no.tol = opt.tol;
  EquilibriumCertificate cert = solve_equilibrium(e, no);
  if (!cert.report.quasi_ok) {
    rep.note = "the solver did not produce a verified certificate" +
               (cert.note.empty() ? std::string() : " (" + cert.note + ")");
    return rep;
  }
  rep.evidence.push_back(std::string("solved certificate kind: ") +
                         (cert.quasi_only() ? "quasi" : "full"));

  StepAllocation f = to_continuum(cert.allocation);
  bool sf = step_feasible(e, f, opt.tol);
  Allocation back = from_continuum(f);
  bool identical = back == cert.allocation;
  EquilibriumReport rep2 = verify_equilibrium(e, back, cert.prices, opt.tol);
  bool kind_kept = rep2.full_ok == cert.report.full_ok;

  rep.evidence.push_back(std::string("step-form feasibility: ") +
                         (sf ? "holds" : "fails"));
  rep.evidence.push_back(std::string("round trip identity: ") +
                         (identical ? "bitwise" : "NOT identical"));
  rep.evidence.push_back(std::string("re-verification: ") +
                         (rep2.full_ok ? "full" : rep2.quasi_ok ? "quasi" : "failed") +
                         "; quasi flag carried: " + (kind_kept ? "yes" : "no"));

  if (sf && identical && rep2.quasi_ok && kind_kept)
    rep.verdict = SuiteVerdict::Confirmed;
  else
    rep.note = "transport invariants violated; see evidence";
  return rep;
}

} // namespace radner
