#include "radner/generate.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace radner {

std::uint64_t Rng::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

std::size_t Rng::index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("Rng::index: n must be positive");
  // rejection-free modulo is fine here; n is tiny relative to 2^64
  return static_cast<std::size_t>(next() % n);
}

namespace {

Partition random_partition(Rng& rng, std::size_t n_states) {
  std::size_t target_blocks = 1 + rng.index(n_states);
  std::vector<std::size_t> label(n_states);
  for (std::size_t s = 0; s < n_states; ++s) label[s] = rng.index(target_blocks);
  // renumber labels in order of first appearance and gather blocks
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> seen(target_blocks, SIZE_MAX);
  for (std::size_t s = 0; s < n_states; ++s) {
    if (seen[label[s]] == SIZE_MAX) {
      seen[label[s]] = blocks.size();
      blocks.emplace_back();
    }
    blocks[seen[label[s]]].push_back(s);
  }
  return Partition(n_states, std::move(blocks));
}

StateUtility random_state_utility(Rng& rng, std::size_t dim) {
  StateUtility u;
  switch (rng.index(4)) {
    case 0: u.form = UtilityForm::CobbDouglas; break;
    case 1: u.form = UtilityForm::CES; break;
    case 2: u.form = UtilityForm::Linear; break;
    default: u.form = UtilityForm::LogLinear; break;
  }
  u.weights.resize(dim);
  double total = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    u.weights[k] = rng.uniform(0.2, 1.0);
    total += u.weights[k];
  }
  if (u.form == UtilityForm::CobbDouglas) {
    // normalize the exponents to sum strictly below one
    for (std::size_t k = 0; k < dim; ++k)
      u.weights[k] = u.weights[k] / total * (127.0 / 128.0);
  }
  if (u.form == UtilityForm::CES) {
    double rho = rng.uniform(-1.5, 0.8);
    if (rho > -0.05 && rho < 0.05) rho = rho < 0.0 ? -0.05 : 0.05;
    u.rho = rho;
  }
  return u;
}

Prior random_prior(Rng& rng, std::size_t n_states) {
  std::vector<double> q(n_states);
  double total = 0.0;
  for (std::size_t s = 0; s < n_states; ++s) {
    q[s] = 0.2 + rng.uniform();
    total += q[s];
  }
  for (std::size_t s = 0; s < n_states; ++s) q[s] /= total;
  // push residual rounding into the largest entry so the sum is exact
  double sum = 0.0;
  std::size_t big = 0;
  for (std::size_t s = 0; s < n_states; ++s) {
    sum += q[s];
    if (q[s] > q[big]) big = s;
  }
  q[big] += 1.0 - sum;
  return Prior(std::move(q));
}

} // namespace

Economy generate_economy(const GenSpec& spec) {
  if (spec.n_agents == 0 || spec.dim == 0 || spec.n_states == 0)
    throw std::invalid_argument("generate_economy: shape fields must be positive");
  const bool strong = spec.profile == "strong";
  const bool mixed = spec.profile == "mixed";
  const bool degen = spec.profile == "degenerate";
  const bool comp = spec.profile == "complementary";
  if (!strong && !mixed && !degen && !comp)
    throw std::invalid_argument("generate_economy: unknown profile '" + spec.profile + "'");
  if (comp && spec.n_states != 2)
    throw std::invalid_argument("generate_economy: the complementary profile needs exactly 2 states");

  Rng rng(spec.seed * 0x9e3779b97f4a7c15ULL + 0x51u + spec.n_agents * 131u +
          spec.dim * 17u + spec.n_states);

  Economy e;
  e.dim = spec.dim;
  std::vector<std::string> labels(spec.n_states);
  for (std::size_t s = 0; s < spec.n_states; ++s) labels[s] = "s" + std::to_string(s);
  e.states = StateSpace(std::move(labels));

  for (std::size_t i = 0; i < spec.n_agents; ++i) {
    Agent a;
    if (comp)
      a.partition = (i % 2 == 0) ? Partition::discrete(2) : Partition::trivial(2);
    else
      a.partition = random_partition(rng, spec.n_states);

    a.endowment_blocks.resize(a.partition.n_blocks());
    for (std::size_t b = 0; b < a.partition.n_blocks(); ++b) {
      Bundle w(spec.dim);
      for (std::size_t k = 0; k < spec.dim; ++k) {
        double v = rng.uniform(0.3, 1.5);
        if (mixed && rng.uniform() < 0.25) v = 0.0;
        w[k] = v;
      }
      a.endowment_blocks[b] = w;
    }
    if (degen && i == 0)
      for (Bundle& w : a.endowment_blocks) w = Bundle(spec.dim);

    a.utility.per_state.resize(spec.n_states);
    for (std::size_t s = 0; s < spec.n_states; ++s)
      a.utility.per_state[s] = random_state_utility(rng, spec.dim);
    a.prior = random_prior(rng, spec.n_states);
    e.agents.push_back(std::move(a));
  }

  if (mixed) {
    // keep the aggregate strictly positive: any dead coordinate of some
    // state is revived through agent n-1's block containing that state
    RandomBundle agg = e.aggregate_endowment();
    Agent& last = e.agents.back();
    for (std::size_t s = 0; s < spec.n_states; ++s)
      for (std::size_t k = 0; k < spec.dim; ++k)
        if (agg.at(s)[k] <= 0.0) {
          std::size_t b = last.partition.block_of(s);
          last.endowment_blocks[b][k] = rng.uniform(0.3, 0.6);
        }
  }

  e.validate();
  return e;
}

} // namespace radner
