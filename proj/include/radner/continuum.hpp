#ifndef RADNER_CONTINUUM_HPP
#define RADNER_CONTINUUM_HPP

#include <optional>
#include <string>
#include <vector>

#include "radner/blocking.hpp"
#include "radner/economy.hpp"

// Equal-treatment continuum interpretation of a finite economy: the agent
// set becomes n intervals of measure 1/n, one per type, and everything
// about a coalition is captured by its per-type masses. The two
// constructions here are exact, not searched: shrinking a blocking
// certificate to create per-state slack, and resizing a slack-backed
// certificate to any prescribed total measure in (0,1).

namespace radner {

/// Per-type participation masses; type i occupies measure 1/n in total.
struct CoalitionProfile {
  std::vector<double> mass; // size n, each in [0, 1/n]

  double total() const;
  /// Throws std::invalid_argument unless sizes match, each mass lies in
  /// [0, 1/n] (tiny slack above), and the total is positive.
  void validate(std::size_t n_agents) const;
  bool operator==(const CoalitionProfile&) const = default;
};

/// One plan per type, constant across the type's interval.
struct StepAllocation {
  std::vector<RandomBundle> plans;

  std::size_t n_types() const { return plans.size(); }
  bool operator==(const StepAllocation&) const = default;
};

/// Transport between the finite economy and its continuum twin. At equal
/// treatment the per-type data transfer verbatim, so the round trip is
/// exact (bitwise).
StepAllocation to_continuum(const Allocation& x);
Allocation from_continuum(const StepAllocation& f);

/// Mass-weighted feasibility of a step allocation:
/// (1/n) sum_i f_i(s) <= (1/n) sum_i a_i(s) per state.
bool step_feasible(const Economy& e, const StepAllocation& f, double tol = 0.0);

/// Blocking evidence in the continuum: masses, per-type improving bundles,
/// re-evaluated margins, and the per-state resource surplus
/// sum_i s_i (a_i - g_i). Certificates produced by lemma_shrink also carry
/// z, a strictly positive commodity vector bounding the surplus from below
/// in every state; z is empty otherwise.
struct ContinuumBlockingCertificate {
  CoalitionProfile profile;
  std::vector<RandomBundle> bundles; // size n; ignored where mass == 0
  std::vector<double> margins;       // size n; 0 where mass == 0
  double delta = 0.0;                // min margin over positive-mass types
  RandomBundle surplus;
  Bundle z;
};

struct ContinuumBlockResult {
  BlockVerdict verdict = BlockVerdict::Indeterminate;
  std::optional<ContinuumBlockingCertificate> certificate;
  double delta = 0.0;
  std::string note;
};

/// Can the coalition with profile p improve on x? Positive-mass types must
/// each strictly gain, with the mass-weighted per-state resource constraint
/// sum_i s_i g_i(state) <= sum_i s_i a_i(state).
ContinuumBlockResult continuum_block(const Economy& e,
                                     const CoalitionProfile& p,
                                     const StepAllocation& x, double tol,
                                     const BlockingConfig& cfg = {});

/// Lift a finite-economy certificate: member weights alpha become type
/// masses alpha/n, bundles and margins transfer, the surplus is computed.
ContinuumBlockingCertificate to_continuum_certificate(
    const Economy& e, const BlockingCertificate& cert);

/// Re-check a continuum certificate against x: profile shape, bundle
/// admissibility, re-evaluated margins > 0 for positive-mass types,
/// recomputed surplus >= -tol per state (and >= z - tol when z is stored).
bool validate_continuum_certificate(const Economy& e, const StepAllocation& x,
                                    const ContinuumBlockingCertificate& cert,
                                    double tol, std::string* why = nullptr);

/// Scale a certificate's bundles toward zero by the largest factor of the
/// form 2^{-m} (smallest m in 1..60) that keeps every positive-mass margin
/// strictly positive. The scaled certificate's surplus then dominates
/// z = inf over states of 2^{-m} sum_i s_i a_i coordinatewise, which is
/// stored and must be strictly positive (each positive-mass type needs a
/// strictly positive aggregate endowment; the assumption audit's strong
/// agent-positivity entry is the sufficient condition).
/// Throws std::runtime_error("... shrink failed") when no m in 1..60
/// preserves the margins, std::invalid_argument on precondition failures.
ContinuumBlockingCertificate lemma_shrink(const Economy& e,
                                          const ContinuumBlockingCertificate& cert,
                                          const StepAllocation& x);

/// Exact-measure resizing of a shrunk certificate (z must be strictly
/// positive). Parameter form, split on epsilon against mu(A) = cert total
/// mass:
///   epsilon <= mu(A): scale all masses by epsilon/mu(A), keep bundles;
///     the result has total mass exactly epsilon.
///   epsilon >  mu(A): keep the original masses with bundles
///     epsilon*g_i + (1-epsilon)*x_i, and add the complement of each type
///     at mass (1-epsilon)*(1/n - s_i) with bundle x_i + c*z where
///     c = epsilon*mu(A)/mu(B) and mu(B) = (1-epsilon)*(1-mu(A)); both
///     pieces of a type are merged by the mass-weighted convex combination,
///     which preserves margins (concavity) and the weighted integrals. The
///     result has total mass mu(A) + (1-epsilon)*(1-mu(A)).
/// Throws std::invalid_argument for epsilon outside (0,1) or missing z.
ContinuumBlockingCertificate vind_resize(const Economy& e,
                                         const ContinuumBlockingCertificate& cert,
                                         const StepAllocation& x,
                                         double epsilon);

/// Solve for the parameter that makes the resized certificate's total mass
/// exactly the requested measure in (0,1): measures at most mu(A) use the
/// scaling case directly, larger ones use the expansion case at
/// epsilon = (1 - measure)/(1 - mu(A)). The note records which form ran.
struct ResizeOutcome {
  ContinuumBlockingCertificate certificate;
  double parameter = 0.0; // the epsilon actually used
  std::string note;
};

ResizeOutcome vind_resize_to_measure(const Economy& e,
                                     const ContinuumBlockingCertificate& cert,
                                     const StepAllocation& x, double measure);

} // namespace radner

#endif
