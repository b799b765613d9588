#ifndef RADNER_BLOCKING_HPP
#define RADNER_BLOCKING_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "radner/economy.hpp"
#include "radner/optim.hpp"

// Blocking oracles. Each decision is driven by the same inner concave
// program: maximize the minimum improvement margin over coalition members
// subject to the weighted per-state resource constraint and block
// measurability. The inner maximum is approached by projected gradient
// ascent on a softened minimum with decreasing temperature; the returned
// margin is always the exactly re-evaluated minimum at the best iterate,
// so a reported certificate is valid evidence while "none" is a bounded
// search outcome, not a proof.

namespace radner {

/// Sorted list of distinct agent indices.
struct Coalition {
  std::vector<std::size_t> members;

  static Coalition grand(std::size_t n_agents);
  static Coalition from_mask(std::uint64_t mask);
  std::uint64_t mask() const;
  void validate(std::size_t n_agents) const;
  bool operator==(const Coalition&) const = default;
};

/// Which partition the certificate's bundles are measurable against.
enum class MeasurabilityMode { Private, Pooled };

/// Evidence that a coalition improves on an allocation: per-member plans,
/// participation weights (all 1 for plain blocking), and re-evaluated
/// utility margins. delta is the smallest margin.
struct BlockingCertificate {
  Coalition coalition;
  std::vector<double> weights;
  std::vector<RandomBundle> bundles;
  std::vector<double> margins;
  /// Weighted resource surplus per state: caps minus weighted use.
  RandomBundle slack;
  double delta = 0.0;
  MeasurabilityMode mode = MeasurabilityMode::Private;
};

enum class BlockVerdict { Blocks, None, Indeterminate };

struct BlockResult {
  BlockVerdict verdict = BlockVerdict::Indeterminate;
  std::optional<BlockingCertificate> certificate;
  /// Achieved inner objective (best min margin), also for "none" outcomes.
  double delta = 0.0;
  /// Search policy / diagnostics provenance.
  std::string note;
};

/// Tuning for the inner solver. tol is the certificate threshold: a
/// certificate is returned only when the re-evaluated min margin exceeds it.
struct BlockingConfig {
  int max_iters_per_stage = 3000;
  int stage_window = 40;
  double stage_rel_tol = 1e-11;
  double tau_start = 1e-1;
  double tau_end = 1e-8;
  double tau_factor = 0.1;
  /// When > 0, stop the continuation as soon as the best margin exceeds
  /// this value; used by existence scans where margin quality is moot.
  double early_stop_margin = 0.0;
};

/// Search policy for Aubin (weighted) blocking.
struct AubinPolicy {
  int dyadic_depth = 4;             // weight grid {1, 1/2, ..., 2^-depth}
  int refine_rounds = 2;            // coordinate-descent rounds on weights
  int refine_probes = 5;            // probes per weight per round
  double near_complete_delta = 1.0 / 64.0; // distinguished profile 1 - delta
  std::string describe() const;
};

/// Can coalition S improve on x with privately measurable plans?
/// Margins are measured against V_i(x_i); x is used only for the targets.
BlockResult private_block(const Economy& e, const Coalition& S,
                          const Allocation& x, double tol,
                          const BlockingConfig& cfg = {});

/// Grand-coalition version (domination test). The allocation x need not be
/// feasible in e; only its utility levels matter.
BlockResult privately_dominated(const Economy& e, const Allocation& x,
                                double tol, const BlockingConfig& cfg = {});

struct CoreResult {
  BlockVerdict verdict = BlockVerdict::Indeterminate; // Blocks => not in core
  std::optional<BlockingCertificate> certificate;     // first in mask order
  std::size_t coalitions_checked = 0;
  std::string note;
};

/// Scan every nonempty coalition in ascending mask order; requires x
/// feasible and n_agents <= 20 (enumeration bound).
CoreResult private_core_membership(const Economy& e, const Allocation& x,
                                   double tol, const BlockingConfig& cfg = {});

/// Weighted (Aubin) blocking: weights alpha_i in (0,1] scale both the
/// resource contribution and the participation of each member. The policy
/// fixes the searched weight grid; absence is "none-found" under it.
BlockResult aubin_block(const Economy& e, const Allocation& x, double tol,
                        const AubinPolicy& policy = {},
                        const BlockingConfig& cfg = {});

/// Validate a certificate against an allocation: membership, weights,
/// measurability (per the certificate's mode), per-state weighted resource
/// feasibility within tol, and margins re-evaluated > tol/2.
bool validate_certificate(const Economy& e, const Allocation& x,
                          const BlockingCertificate& cert, double tol,
                          std::string* why = nullptr);

/// Per-state (complete information) blocking on an event of states.
struct ExPostCertificate {
  Coalition coalition;
  std::vector<std::size_t> event;                  // states where S blocks
  std::vector<std::vector<Bundle>> state_bundles;  // event state -> member -> bundle
  std::vector<std::vector<double>> state_margins;  // event state -> member
};

struct ExPostResult {
  BlockVerdict verdict = BlockVerdict::Indeterminate;
  std::optional<ExPostCertificate> certificate;
  std::string note;
};

/// Scan coalitions in mask order; for each, test every state's
/// complete-information restriction. The first coalition with a nonempty
/// blocking event is returned (all states carry positive prior mass, so
/// any nonempty event is a positive-probability event).
ExPostResult ex_post_block(const Economy& e, const Allocation& x, double tol,
                           const BlockingConfig& cfg = {});

/// Grand-coalition domination with pooled-information plans. weak=false
/// requires each x_i to be measurable for its own agent; weak=true only
/// requires x_i to be measurable for the pooled partition. Either
/// precondition failure throws std::invalid_argument.
BlockResult fine_dominate(const Economy& e, const Allocation& x, bool weak,
                          double tol, const BlockingConfig& cfg = {});

/// The shared inner program, exposed for the continuum module and tests:
/// maximize min_i [ V_{members[i]}(y_i) - targets[i] ] over block plans
/// y_i >= 0 measurable for parts[i], subject to
/// sum_i weights[i] * y_i(s) <= caps(s).
struct MaxMinSpec {
  const Economy* econ = nullptr;
  std::vector<std::size_t> members;
  std::vector<double> targets;
  std::vector<Partition> parts;
  std::vector<double> weights;
  RandomBundle caps;
};

struct MaxMinOutcome {
  optim::BlockVars y;
  std::vector<double> margins;
  double delta = 0.0;
  bool converged = false;
};

/// When starts is non-null and non-empty it replaces the two built-in
/// starting points; each start is projected to feasibility first. The
/// inner program is concave, so custom starts change the path, never the
/// optimum being approached.
MaxMinOutcome solve_maxmin(const MaxMinSpec& spec, const BlockingConfig& cfg,
                           const std::vector<optim::BlockVars>* starts = nullptr);

} // namespace radner

#endif
