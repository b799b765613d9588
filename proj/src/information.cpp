#include "radner/information.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace radner {

std::size_t StateSpace::index_of(const std::string& label) const {
  for (std::size_t s = 0; s < labels.size(); ++s)
    if (labels[s] == label) return s;
  throw std::invalid_argument("unknown state label: " + label);
}

Partition::Partition(std::size_t n_states,
                     std::vector<std::vector<std::size_t>> blocks)
    : n_states_(n_states), blocks_(std::move(blocks)) {
  if (n_states_ == 0)
    throw std::invalid_argument("partition: empty state space");
  for (auto& b : blocks_) {
    if (b.empty()) throw std::invalid_argument("partition: empty block");
    std::sort(b.begin(), b.end());
  }
  std::sort(blocks_.begin(), blocks_.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  block_of_.assign(n_states_, static_cast<std::size_t>(-1));
  for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
    for (std::size_t s : blocks_[bi]) {
      if (s >= n_states_)
        throw std::invalid_argument("partition: state index out of range");
      if (block_of_[s] != static_cast<std::size_t>(-1))
        throw std::invalid_argument("partition: blocks overlap");
      block_of_[s] = bi;
    }
  }
  for (std::size_t s = 0; s < n_states_; ++s)
    if (block_of_[s] == static_cast<std::size_t>(-1))
      throw std::invalid_argument("partition: blocks do not cover all states");
}

Partition Partition::discrete(std::size_t n_states) {
  std::vector<std::vector<std::size_t>> blocks;
  blocks.reserve(n_states);
  for (std::size_t s = 0; s < n_states; ++s) blocks.push_back({s});
  return Partition(n_states, std::move(blocks));
}

Partition Partition::trivial(std::size_t n_states) {
  std::vector<std::size_t> all(n_states);
  for (std::size_t s = 0; s < n_states; ++s) all[s] = s;
  return Partition(n_states, {all});
}

Partition join(const std::vector<Partition>& parts) {
  if (parts.empty()) throw std::invalid_argument("join: no partitions given");
  const std::size_t n = parts[0].n_states();
  for (const Partition& p : parts)
    if (p.n_states() != n)
      throw std::invalid_argument("join: partitions disagree on state count");

  // Two states share a join block iff their block-id signatures agree in
  // every partition. Group by signature, then canonicalize.
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::vector<std::size_t>> signatures;
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> sig;
    sig.reserve(parts.size());
    for (const Partition& p : parts) sig.push_back(p.block_of(s));
    bool placed = false;
    for (std::size_t g = 0; g < signatures.size(); ++g) {
      if (signatures[g] == sig) {
        groups[g].push_back(s);
        placed = true;
        break;
      }
    }
    if (!placed) {
      signatures.push_back(std::move(sig));
      groups.push_back({s});
    }
  }
  return Partition(n, std::move(groups));
}

void Prior::validate(double tol) const {
  if (q.empty()) throw std::invalid_argument("prior: empty");
  double sum = 0.0;
  for (double v : q) {
    if (!(v > 0.0)) throw std::invalid_argument("prior: probabilities must be strictly positive");
    sum += v;
  }
  if (std::fabs(sum - 1.0) > tol)
    throw std::invalid_argument("prior: probabilities must sum to 1");
}

RandomBundle RandomBundle::from_blocks(const Partition& p,
                                       const std::vector<Bundle>& per_block) {
  if (per_block.size() != p.n_blocks())
    throw std::invalid_argument("from_blocks: need exactly one bundle per block");
  std::vector<Bundle> per_state(p.n_states());
  for (std::size_t s = 0; s < p.n_states(); ++s)
    per_state[s] = per_block[p.block_of(s)];
  return RandomBundle(std::move(per_state));
}

RandomBundle RandomBundle::constant(std::size_t n_states, const Bundle& b) {
  return RandomBundle(std::vector<Bundle>(n_states, b));
}

namespace {

void require_same_shape(const RandomBundle& a, const RandomBundle& b,
                        const char* what) {
  if (a.n_states() != b.n_states() || a.dim() != b.dim()) {
    std::ostringstream os;
    os << what << ": shape mismatch";
    throw std::invalid_argument(os.str());
  }
}

} // namespace

RandomBundle add(const RandomBundle& a, const RandomBundle& b) {
  require_same_shape(a, b, "add");
  RandomBundle r = a;
  for (std::size_t s = 0; s < a.n_states(); ++s) r.at(s) = add(a.at(s), b.at(s));
  return r;
}

RandomBundle sub(const RandomBundle& a, const RandomBundle& b) {
  require_same_shape(a, b, "sub");
  RandomBundle r = a;
  for (std::size_t s = 0; s < a.n_states(); ++s) r.at(s) = sub(a.at(s), b.at(s));
  return r;
}

RandomBundle scale(double s, const RandomBundle& a) {
  RandomBundle r = a;
  for (std::size_t i = 0; i < a.n_states(); ++i) r.at(i) = scale(s, a.at(i));
  return r;
}

Bundle state_inf(const RandomBundle& a) {
  if (a.n_states() == 0) throw std::invalid_argument("state_inf: empty");
  Bundle r = a.at(0);
  for (std::size_t s = 1; s < a.n_states(); ++s) r = inf(r, a.at(s));
  return r;
}

double sup_norm(const RandomBundle& a) {
  double m = 0.0;
  for (std::size_t s = 0; s < a.n_states(); ++s)
    m = std::max(m, sup_norm(a.at(s)));
  return m;
}

bool leq(const RandomBundle& a, const RandomBundle& b, double tol) {
  require_same_shape(a, b, "leq");
  for (std::size_t s = 0; s < a.n_states(); ++s)
    if (!leq(a.at(s), b.at(s), tol)) return false;
  return true;
}

bool is_nonneg(const RandomBundle& a, double tol) {
  for (std::size_t s = 0; s < a.n_states(); ++s)
    if (!is_nonneg(a.at(s), tol)) return false;
  return true;
}

bool is_measurable(const RandomBundle& x, const Partition& p, double tol) {
  if (x.n_states() != p.n_states())
    throw std::invalid_argument("is_measurable: state count mismatch");
  for (const auto& block : p.blocks()) {
    for (std::size_t k = 0; k < x.dim(); ++k) {
      double lo = x.at(block[0])[k], hi = lo;
      for (std::size_t s : block) {
        lo = std::min(lo, x.at(s)[k]);
        hi = std::max(hi, x.at(s)[k]);
      }
      if (hi - lo > tol) return false;
    }
  }
  return true;
}

RandomBundle project_measurable(const RandomBundle& x, const Partition& p,
                                const Prior& q) {
  if (x.n_states() != p.n_states() || q.size() != p.n_states())
    throw std::invalid_argument("project_measurable: shape mismatch");
  q.validate(1e-9);
  std::vector<Bundle> per_block;
  per_block.reserve(p.n_blocks());
  for (const auto& block : p.blocks()) {
    double mass = 0.0;
    Bundle avg(x.dim());
    for (std::size_t s : block) {
      mass += q[s];
      for (std::size_t k = 0; k < x.dim(); ++k) avg[k] += q[s] * x.at(s)[k];
    }
    for (std::size_t k = 0; k < x.dim(); ++k) avg[k] /= mass;
    per_block.push_back(std::move(avg));
  }
  return RandomBundle::from_blocks(p, per_block);
}

} // namespace radner
