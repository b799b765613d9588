#ifndef RADNER_INFORMATION_HPP
#define RADNER_INFORMATION_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "radner/lattice.hpp"

// Finite state spaces, information partitions, priors, and state-indexed
// bundles. Partitions are kept in a canonical form so that equality and
// serialization are stable; measurability of solver-produced plans is a
// consequence of block storage, and the predicate here exists to audit
// external inputs.

namespace radner {

/// The finite set of states of nature, with stable labels.
struct StateSpace {
  std::vector<std::string> labels;

  StateSpace() = default;
  explicit StateSpace(std::vector<std::string> names) : labels(std::move(names)) {}

  std::size_t size() const { return labels.size(); }
  /// Index of a label; throws std::invalid_argument when absent.
  std::size_t index_of(const std::string& label) const;
  bool operator==(const StateSpace&) const = default;
};

/// A partition of {0, ..., n_states-1} into disjoint nonempty blocks.
/// Canonical form: every block sorted ascending, blocks ordered by their
/// smallest element. Constructors canonicalize and validate.
class Partition {
 public:
  Partition() = default;
  /// Build from explicit blocks over n_states states; validates coverage
  /// and disjointness, throws std::invalid_argument otherwise.
  Partition(std::size_t n_states, std::vector<std::vector<std::size_t>> blocks);

  /// The discrete partition (all singletons).
  static Partition discrete(std::size_t n_states);
  /// The trivial partition (one block).
  static Partition trivial(std::size_t n_states);

  std::size_t n_states() const { return n_states_; }
  std::size_t n_blocks() const { return blocks_.size(); }
  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
  const std::vector<std::size_t>& block(std::size_t b) const { return blocks_[b]; }
  /// Index of the block containing state s.
  std::size_t block_of(std::size_t s) const { return block_of_[s]; }

  bool operator==(const Partition&) const = default;

 private:
  std::size_t n_states_ = 0;
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::size_t> block_of_;
};

/// Coarsest common refinement: states share a join block exactly when they
/// share a block in every input partition. Throws on empty input or
/// mismatched state counts.
Partition join(const std::vector<Partition>& parts);

/// A strictly positive probability vector over states.
struct Prior {
  std::vector<double> q;

  Prior() = default;
  explicit Prior(std::vector<double> probs) : q(std::move(probs)) {}

  std::size_t size() const { return q.size(); }
  double operator[](std::size_t s) const { return q[s]; }
  /// Throws std::invalid_argument unless all entries are > 0 and they sum
  /// to 1 within tol.
  void validate(double tol = 1e-12) const;
  bool operator==(const Prior&) const = default;
};

/// A state-indexed commodity bundle x : states -> R^l, stored densely.
/// Plans produced by the solvers are built with from_blocks, which copies
/// one bundle per partition block, so their measurability is exact by
/// construction rather than checked after the fact.
class RandomBundle {
 public:
  RandomBundle() = default;
  RandomBundle(std::size_t n_states, std::size_t dim)
      : per_state_(n_states, Bundle(dim)) {}
  explicit RandomBundle(std::vector<Bundle> per_state)
      : per_state_(std::move(per_state)) {}

  /// One bundle per block of p, replicated across the block's states.
  static RandomBundle from_blocks(const Partition& p,
                                  const std::vector<Bundle>& per_block);
  /// Constant across states.
  static RandomBundle constant(std::size_t n_states, const Bundle& b);

  std::size_t n_states() const { return per_state_.size(); }
  std::size_t dim() const { return per_state_.empty() ? 0 : per_state_[0].dim(); }
  const Bundle& at(std::size_t s) const { return per_state_[s]; }
  Bundle& at(std::size_t s) { return per_state_[s]; }
  const std::vector<Bundle>& states() const { return per_state_; }

  bool operator==(const RandomBundle&) const = default;

 private:
  std::vector<Bundle> per_state_;
};

RandomBundle add(const RandomBundle& a, const RandomBundle& b);
RandomBundle sub(const RandomBundle& a, const RandomBundle& b);
RandomBundle scale(double s, const RandomBundle& a);
/// Coordinatewise infimum over states.
Bundle state_inf(const RandomBundle& a);
/// max over states of the sup-norm of a(s).
double sup_norm(const RandomBundle& a);
/// True when a(s) <= b(s) + tol coordinatewise for every state.
bool leq(const RandomBundle& a, const RandomBundle& b, double tol = 0.0);
bool is_nonneg(const RandomBundle& a, double tol = 0.0);

/// Audit predicate: is x constant (within tol, sup-norm) on every block of p?
bool is_measurable(const RandomBundle& x, const Partition& p, double tol = 0.0);

/// Conditional expectation onto the p-measurable plans: on each block,
/// the prior-weighted average of x. Idempotent, linear, and positive.
RandomBundle project_measurable(const RandomBundle& x, const Partition& p,
                                const Prior& q);

} // namespace radner

#endif
