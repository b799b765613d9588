#ifndef RADNER_GENERATE_HPP
#define RADNER_GENERATE_HPP

#include <cstdint>
#include <string>

#include "radner/economy.hpp"

// Seeded instance generation. Every random draw flows through the local
// generator below, so a (spec, seed) pair reproduces the same economy on
// any platform; the standard <random> distributions are not used because
// their value sequences are implementation-defined.

namespace radner {

/// Deterministic 64-bit generator (splitmix construction).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform double in [0, 1), 53 bits.
  double uniform();
  double uniform(double lo, double hi);
  /// Uniform index in [0, n); n must be positive.
  std::size_t index(std::size_t n);

 private:
  std::uint64_t state_;
};

/// What to generate. Profiles:
///   strong:        strictly positive block endowments and mixed utility
///                  forms; the audit's strict entries all hold.
///   mixed:         some endowment coordinates are zeroed per block, but the
///                  aggregate stays strictly positive in every state.
///   degenerate:    agent 0's endowment is identically zero, so at most a
///                  quasi-equilibrium exists.
///   complementary: requires n_states == 2; partitions alternate between
///                  discrete and trivial so the pooled information is
///                  complete while no single agent has it.
struct GenSpec {
  std::uint64_t seed = 0;
  std::size_t n_agents = 2;
  std::size_t dim = 2;
  std::size_t n_states = 2;
  std::string profile = "strong";
};

/// Build the instance. Throws std::invalid_argument on impossible shapes or
/// an unknown profile name. The result passes Economy::validate().
Economy generate_economy(const GenSpec& spec);

} // namespace radner

#endif
