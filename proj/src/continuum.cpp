#include "radner/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace radner {

double CoalitionProfile::total() const {
  double t = 0.0;
  for (double m : mass) t += m;
  return t;
}

void CoalitionProfile::validate(std::size_t n_agents) const {
  if (mass.size() != n_agents)
    throw std::invalid_argument("coalition profile: mass count mismatch");
  const double cap = 1.0 / static_cast<double>(n_agents);
  for (double m : mass)
    if (!(m >= 0.0) || m > cap + 1e-15)
      throw std::invalid_argument(
          "coalition profile: each mass must lie in [0, 1/n]");
  if (!(total() > 0.0))
    throw std::invalid_argument("coalition profile: total mass must be positive");
}

StepAllocation to_continuum(const Allocation& x) {
  return StepAllocation{x.plans};
}

Allocation from_continuum(const StepAllocation& f) {
  return Allocation{f.plans};
}

bool step_feasible(const Economy& e, const StepAllocation& f, double tol) {
  if (f.n_types() != e.n_agents())
    throw std::invalid_argument("step_feasible: type count mismatch");
  const double w = 1.0 / static_cast<double>(e.n_agents());
  RandomBundle lhs(e.n_states(), e.dim), rhs(e.n_states(), e.dim);
  for (std::size_t i = 0; i < e.n_agents(); ++i) {
    if (f.plans[i].n_states() != e.n_states() || f.plans[i].dim() != e.dim)
      throw std::invalid_argument("step_feasible: plan shape mismatch");
    if (!is_nonneg(f.plans[i], tol)) return false;
    lhs = add(lhs, scale(w, f.plans[i]));
    rhs = add(rhs, scale(w, e.agents[i].endowment()));
  }
  return leq(lhs, rhs, tol);
}

namespace {

RandomBundle weighted_surplus(const Economy& e, const CoalitionProfile& p,
                              const std::vector<RandomBundle>& bundles) {
  RandomBundle s(e.n_states(), e.dim);
  for (std::size_t i = 0; i < e.n_agents(); ++i) {
    if (p.mass[i] <= 0.0) continue;
    s = add(s, scale(p.mass[i], sub(e.agents[i].endowment(), bundles[i])));
  }
  return s;
}

double min_positive_mass_margin(const CoalitionProfile& p,
                                const std::vector<double>& margins) {
  double mn = 1e300;
  for (std::size_t i = 0; i < p.mass.size(); ++i)
    if (p.mass[i] > 0.0) mn = std::min(mn, margins[i]);
  return mn;
}

} // namespace

ContinuumBlockResult continuum_block(const Economy& e,
                                     const CoalitionProfile& p,
                                     const StepAllocation& x, double tol,
                                     const BlockingConfig& cfg) {
  e.validate();
  p.validate(e.n_agents());
  if (x.n_types() != e.n_agents())
    throw std::invalid_argument("continuum_block: type count mismatch");

  MaxMinSpec spec;
  spec.econ = &e;
  RandomBundle caps(e.n_states(), e.dim);
  for (std::size_t i = 0; i < e.n_agents(); ++i) {
    if (p.mass[i] <= 0.0) continue;
    spec.members.push_back(i);
    spec.targets.push_back(expected_utility(e, i, x.plans[i]));
    spec.parts.push_back(e.agents[i].partition);
    spec.weights.push_back(p.mass[i]);
    caps = add(caps, scale(p.mass[i], e.agents[i].endowment()));
  }
  spec.caps = std::move(caps);

  MaxMinOutcome sol = solve_maxmin(spec, cfg);

  ContinuumBlockResult res;
  res.delta = sol.delta;
  if (sol.delta > tol) {
    ContinuumBlockingCertificate cert;
    cert.profile = p;
    cert.bundles.assign(e.n_agents(), RandomBundle(e.n_states(), e.dim));
    cert.margins.assign(e.n_agents(), 0.0);
    for (std::size_t j = 0; j < spec.members.size(); ++j) {
      std::size_t i = spec.members[j];
      cert.bundles[i] = RandomBundle::from_blocks(spec.parts[j], sol.y[j]);
      cert.margins[i] = sol.margins[j];
    }
    cert.delta = sol.delta;
    cert.surplus = weighted_surplus(e, p, cert.bundles);
    std::string why;
    if (!validate_continuum_certificate(e, x, cert, tol, &why)) {
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

ContinuumBlockingCertificate to_continuum_certificate(
    const Economy& e, const BlockingCertificate& cert) {
  cert.coalition.validate(e.n_agents());
  const std::size_t n = e.n_agents();
  ContinuumBlockingCertificate out;
  out.profile.mass.assign(n, 0.0);
  out.bundles.assign(n, RandomBundle(e.n_states(), e.dim));
  out.margins.assign(n, 0.0);
  for (std::size_t j = 0; j < cert.coalition.members.size(); ++j) {
    std::size_t i = cert.coalition.members[j];
    out.profile.mass[i] = cert.weights[j] / static_cast<double>(n);
    out.bundles[i] = cert.bundles[j];
    out.margins[i] = cert.margins[j];
  }
  out.delta = cert.delta;
  out.surplus = weighted_surplus(e, out.profile, out.bundles);
  return out;
}

bool validate_continuum_certificate(const Economy& e, const StepAllocation& x,
                                    const ContinuumBlockingCertificate& cert,
                                    double tol, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  try {
    cert.profile.validate(e.n_agents());
  } catch (const std::exception& ex) {
    return fail(ex.what());
  }
  const std::size_t n = e.n_agents();
  if (cert.bundles.size() != n || cert.margins.size() != n ||
      x.n_types() != n)
    return fail("certificate field sizes disagree with the economy");

  for (std::size_t i = 0; i < n; ++i) {
    if (cert.profile.mass[i] <= 0.0) continue;
    const RandomBundle& g = cert.bundles[i];
    if (g.n_states() != e.n_states() || g.dim() != e.dim)
      return fail("bundle shape mismatch");
    if (!is_nonneg(g, 0.0)) return fail("bundle has a negative coordinate");
    if (!is_measurable(g, e.agents[i].partition, 1e-9))
      return fail("bundle not measurable for its type");
    double margin =
        expected_utility(e, i, g) - expected_utility(e, i, x.plans[i]);
    if (!(margin > 0.0))
      return fail("re-evaluated margin is not strictly positive");
  }

  RandomBundle surplus = weighted_surplus(e, cert.profile, cert.bundles);
  for (std::size_t s = 0; s < e.n_states(); ++s)
    for (std::size_t k = 0; k < e.dim; ++k) {
      if (surplus.at(s)[k] < -tol)
        return fail("weighted resource constraint violated");
      if (cert.z.dim() == e.dim && surplus.at(s)[k] < cert.z[k] - tol)
        return fail("surplus drops below the stored lower bound");
    }
  return true;
}

ContinuumBlockingCertificate lemma_shrink(const Economy& e,
                                          const ContinuumBlockingCertificate& cert,
                                          const StepAllocation& x) {
  e.validate();
  cert.profile.validate(e.n_agents());
  if (x.n_types() != e.n_agents())
    throw std::invalid_argument("lemma_shrink: type count mismatch");
  const std::size_t n = e.n_agents();

  // the strictly positive floor requires a strictly positive mass-weighted
  // aggregate endowment in every state
  RandomBundle agg(e.n_states(), e.dim);
  for (std::size_t i = 0; i < n; ++i)
    if (cert.profile.mass[i] > 0.0)
      agg = add(agg, scale(cert.profile.mass[i], e.agents[i].endowment()));
  Bundle agg_inf = state_inf(agg);
  for (std::size_t k = 0; k < e.dim; ++k)
    if (!(agg_inf[k] > 0.0))
      throw std::invalid_argument(
          "lemma_shrink: the coalition's weighted aggregate endowment must be "
          "strictly positive in every state and coordinate");

  std::vector<double> targets(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    if (cert.profile.mass[i] > 0.0)
      targets[i] = expected_utility(e, i, x.plans[i]);

  for (int m = 1; m <= 60; ++m) {
    const double c = std::ldexp(1.0, -m);
    ContinuumBlockingCertificate out;
    out.profile = cert.profile;
    out.bundles.assign(n, RandomBundle(e.n_states(), e.dim));
    out.margins.assign(n, 0.0);
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (cert.profile.mass[i] <= 0.0) continue;
      out.bundles[i] = scale(1.0 - c, cert.bundles[i]);
      out.margins[i] =
          expected_utility(e, i, out.bundles[i]) - targets[i];
      if (!(out.margins[i] > 0.0)) ok = false;
    }
    if (!ok) continue;
    out.delta = min_positive_mass_margin(out.profile, out.margins);
    out.surplus = weighted_surplus(e, out.profile, out.bundles);
    out.z = scale(c, agg_inf);
    return out;
  }
  throw std::runtime_error(
      "lemma_shrink: shrink failed (margins too thin for floating point)");
}

namespace {

void check_resize_inputs(const Economy& e,
                         const ContinuumBlockingCertificate& cert,
                         const StepAllocation& x, double epsilon) {
  e.validate();
  cert.profile.validate(e.n_agents());
  if (x.n_types() != e.n_agents())
    throw std::invalid_argument("vind_resize: type count mismatch");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("vind_resize: parameter must lie in (0,1)");
  if (cert.z.dim() != e.dim)
    throw std::invalid_argument("vind_resize: certificate carries no slack floor");
  for (std::size_t k = 0; k < e.dim; ++k)
    if (!(cert.z[k] > 0.0))
      throw std::invalid_argument(
          "vind_resize: slack floor must be strictly positive");
  if (!step_feasible(e, x, 1e-9))
    throw std::invalid_argument("vind_resize: x must be feasible");
}

// total mass exactly epsilon: bundles carry over, masses scale
ContinuumBlockingCertificate resize_by_scaling(
    const Economy& e, const ContinuumBlockingCertificate& cert,
    const StepAllocation& x, double epsilon) {
  const std::size_t n = e.n_agents();
  const double mu_a = cert.profile.total();
  const double delta = epsilon / mu_a;

  ContinuumBlockingCertificate out;
  out.bundles.assign(n, RandomBundle(e.n_states(), e.dim));
  out.margins.assign(n, 0.0);
  out.profile.mass.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (cert.profile.mass[i] <= 0.0) continue;
    out.profile.mass[i] = delta * cert.profile.mass[i];
    out.bundles[i] = cert.bundles[i];
    out.margins[i] = expected_utility(e, i, out.bundles[i]) -
                     expected_utility(e, i, x.plans[i]);
  }
  out.surplus = weighted_surplus(e, out.profile, out.bundles);
  out.z = scale(delta, cert.z);
  out.delta = min_positive_mass_margin(out.profile, out.margins);
  return out;
}

// total mass mu(A) + (1 - epsilon)(1 - mu(A)): the coalition keeps its
// members at mixed bundles and picks up the complement of every type at
// mass (1-eps)(1/n - s_i), paying for the newcomers' improvement x_i + c*z
// out of the certificate's slack. Valid for any epsilon in (0,1) as long
// as mu(A) < 1.
ContinuumBlockingCertificate resize_by_expansion(
    const Economy& e, const ContinuumBlockingCertificate& cert,
    const StepAllocation& x, double epsilon) {
  const std::size_t n = e.n_agents();
  const double mu_a = cert.profile.total();
  const double type_cap = 1.0 / static_cast<double>(n);
  const double mu_b = (1.0 - epsilon) * (1.0 - mu_a);
  if (!(mu_b > 0.0))
    throw std::invalid_argument(
        "vind_resize: the expansion case needs a nonempty complement");
  const double c = epsilon * mu_a / mu_b;
  RandomBundle zc = RandomBundle::constant(e.n_states(), scale(c, cert.z));

  ContinuumBlockingCertificate out;
  out.bundles.assign(n, RandomBundle(e.n_states(), e.dim));
  out.margins.assign(n, 0.0);
  out.profile.mass.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double s_i = cert.profile.mass[i];
    const double comp = (1.0 - epsilon) * (type_cap - s_i);
    double mass = s_i + comp;
    if (!(mass > 0.0)) continue;

    RandomBundle member_part(e.n_states(), e.dim);
    if (s_i > 0.0)
      member_part = add(scale(epsilon, cert.bundles[i]),
                        scale(1.0 - epsilon, x.plans[i]));
    RandomBundle comp_part = add(x.plans[i], zc);

    // mass-weighted convex combination of the two pieces of this type;
    // concavity keeps the margin strictly positive and the weighted
    // integral is preserved exactly
    RandomBundle merged(e.n_states(), e.dim);
    if (s_i > 0.0) merged = add(merged, scale(s_i / mass, member_part));
    if (comp > 0.0) merged = add(merged, scale(comp / mass, comp_part));

    out.profile.mass[i] = mass;
    out.bundles[i] = merged;
    out.margins[i] = expected_utility(e, i, merged) -
                     expected_utility(e, i, x.plans[i]);
  }
  out.surplus = weighted_surplus(e, out.profile, out.bundles);
  out.delta = min_positive_mass_margin(out.profile, out.margins);
  return out;
}

} // namespace

ContinuumBlockingCertificate vind_resize(const Economy& e,
                                         const ContinuumBlockingCertificate& cert,
                                         const StepAllocation& x,
                                         double epsilon) {
  check_resize_inputs(e, cert, x, epsilon);
  if (epsilon <= cert.profile.total())
    return resize_by_scaling(e, cert, x, epsilon);
  return resize_by_expansion(e, cert, x, epsilon);
}

ResizeOutcome vind_resize_to_measure(const Economy& e,
                                     const ContinuumBlockingCertificate& cert,
                                     const StepAllocation& x, double measure) {
  if (!(measure > 0.0 && measure < 1.0))
    throw std::invalid_argument(
        "vind_resize_to_measure: requested measure must lie in (0,1)");
  const double mu_a = cert.profile.total();

  ResizeOutcome out;
  std::ostringstream note;
  if (measure <= mu_a) {
    out.parameter = measure;
    check_resize_inputs(e, cert, x, out.parameter);
    out.certificate = resize_by_scaling(e, cert, x, out.parameter);
    note << "scaling form at parameter " << out.parameter;
  } else {
    out.parameter = (1.0 - measure) / (1.0 - mu_a);
    check_resize_inputs(e, cert, x, out.parameter);
    out.certificate = resize_by_expansion(e, cert, x, out.parameter);
    note << "expansion form; parameter " << out.parameter
         << " solved from the requested measure (the direct parameter form "
            "reaches total mass mu(A) + (1-parameter)(1-mu(A)))";
  }
  out.note = note.str();
  return out;
}

} // namespace radner
