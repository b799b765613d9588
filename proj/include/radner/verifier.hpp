#ifndef RADNER_VERIFIER_HPP
#define RADNER_VERIFIER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "radner/blocking.hpp"
#include "radner/continuum.hpp"
#include "radner/economy.hpp"
#include "radner/equilibrium.hpp"

// Property suites for the core/equilibrium equivalence results. Each check
// stresses one implication numerically: forward directions assert that the
// implication's conclusion holds on the given instance, converse directions
// hunt for the witness the converse promises. Searches are policy-bounded,
// so "confirmed" on a converse means "the promised witness was found" and
// never "no counterexample exists"; the policy string records the bound.

namespace radner {

enum class SuiteVerdict { Confirmed, CounterexampleCandidate, Indeterminate };

/// Outcome of one suite on one instance. The certificate field carries the
/// decisive payload when there is one: the counterexample for a
/// counterexample candidate (always re-validated), or the found witness for
/// a confirmed converse. An indeterminate verdict always carries
/// diagnostics in note.
struct TheoremReport {
  std::string theorem;   // "T5", "T6", "T7", "T8", "C5", "P2"
  std::string digest;    // content digest of the economy
  std::string direction; // "forward", "converse", "both"
  SuiteVerdict verdict = SuiteVerdict::Indeterminate;
  std::vector<std::string> evidence;
  std::optional<BlockingCertificate> certificate;
  /// Perturbation point r of the derived economy the certificate lives in;
  /// empty when it refers to the base economy.
  std::vector<double> certificate_r;
  std::string policy;
  std::string note;
};

struct VerifyOptions {
  double tol = 1e-6;
  std::uint64_t seed = 0;
  /// Seeded-random perturbation vectors appended to the default grid.
  std::size_t random_r = 100;
  /// Cap on the dyadic part of the default grid.
  std::size_t grid_cap = 4096;
  /// Target total mass for the near-complete participation construction:
  /// 1 - 1/(scale * n). Larger scale pushes participation rates closer to 1.
  double near_complete_scale = 8.0;
  AubinPolicy policy{};
  BlockingConfig blocking{};
  NegishiOptions negishi{};
};

/// The default perturbation grid: dyadic profiles {0, 1/4, 1/2, 3/4, 1}^n in
/// lexicographic order, capped at opt.grid_cap points, followed by
/// opt.random_r seeded-random profiles.
std::vector<std::vector<double>> default_r_grid(const Economy& e,
                                                const VerifyOptions& opt);

/// Walrasian allocations are exactly the weighted-coalition non-dominated
/// ones. Forward: when (x, pi) verifies for prices solved at x, the weighted
/// domination search must come back empty. Converse: when the search comes
/// back empty, a solve seeded at x should support x as Walrasian; this
/// direction is best-effort and labeled with the search policy.
TheoremReport check_theorem5(const Economy& e, const Allocation& x,
                             const VerifyOptions& opt = {});

/// Walrasian allocations are exactly the allocations no grand coalition
/// dominates in any endowment perturbation toward x. Forward: equilibrium x
/// stays undominated at every grid point. Converse: for feasible
/// non-equilibrium x, find a perturbation with a domination certificate,
/// preferring near-complete perturbations.
TheoremReport check_theorem6(const Economy& e, const Allocation& x,
                             const std::vector<std::vector<double>>& r_grid,
                             const VerifyOptions& opt = {});

/// Event-blocking implies pooled-information domination in a perturbed
/// economy. With an event witness, the constructive path (per-state
/// certificate, slack shrinking, exact mass resizing, convex mixing) must
/// assemble a validated pooled-information domination certificate; without
/// one, the pooled domination search must stay clean across the grid.
TheoremReport check_theorem7(const Economy& e, const Allocation& x,
                             const std::vector<std::vector<double>>& r_grid,
                             const VerifyOptions& opt = {});

/// Core membership is equivalent to grand-coalition non-domination across
/// the perturbation family. Forward is asserted exactly on every sampled
/// perturbation; the converse lifts a blocking certificate to a
/// near-complete perturbation via the continuum construction.
TheoremReport check_theorem8(const Economy& e, const Allocation& x,
                             const std::vector<std::vector<double>>& r_grid,
                             const VerifyOptions& opt = {});

/// Pooled-measurability version of the perturbation equivalence: weak
/// pooled domination somewhere on the grid must match core exclusion in the
/// pooled-information twin economy.
TheoremReport check_corollary5(const Economy& e, const Allocation& x,
                               const std::vector<std::vector<double>>& r_grid,
                               const VerifyOptions& opt = {});

/// Equal-treatment transport: a solved certificate moves to step form and
/// back verbatim, stays feasible in step form, and re-verifies at the same
/// standard after the round trip.
TheoremReport check_proposition2(const Economy& e,
                                 const VerifyOptions& opt = {});

} // namespace radner

#endif
