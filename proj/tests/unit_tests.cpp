#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "radner/blocking.hpp"
#include "radner/continuum.hpp"
#include "radner/economy.hpp"
#include "radner/equilibrium.hpp"
#include "radner/generate.hpp"
#include "radner/information.hpp"
#include "radner/io.hpp"
#include "radner/lattice.hpp"
#include "radner/optim.hpp"
#include "radner/parallel.hpp"
#include "radner/verifier.hpp"

#include "oracles.hpp"

using namespace radner;

namespace {

GenSpec spec_of(std::uint64_t seed, std::size_t n, std::size_t l,
                std::size_t st, const char* profile) {
  GenSpec g;
  g.seed = seed;
  g.n_agents = n;
  g.dim = l;
  g.n_states = st;
  g.profile = profile;
  return g;
}

Allocation endowment_allocation(const Economy& e) {
  Allocation x;
  for (const Agent& a : e.agents) x.plans.push_back(a.endowment());
  return x;
}

Allocation scaled_allocation(const Allocation& x, double factor) {
  Allocation y;
  for (const RandomBundle& p : x.plans) y.plans.push_back(scale(factor, p));
  return y;
}

} // namespace

TEST_SUITE("lattice") {
  TEST_CASE("coordinatewise order operations") {
    Bundle a{2.0, -6.0}, b{4.0, 3.0};
    CHECK(sup(a, b) == Bundle{4.0, 3.0});
    CHECK(inf(a, b) == Bundle{2.0, -6.0});
    CHECK(abs(a) == Bundle{2.0, 6.0});
    CHECK(pos_part(a) == Bundle{2.0, 0.0});
    CHECK(neg_part(a) == Bundle{0.0, 6.0});
    CHECK(add(pos_part(a), scale(-1.0, neg_part(a))) == a);
    CHECK(inf(pos_part(a), neg_part(a)) == Bundle{0.0, 0.0});
  }

  TEST_CASE("arithmetic and pairing") {
    CHECK(add(Bundle{1.0, 2.0}, Bundle{3.0, 4.0}) == Bundle{4.0, 6.0});
    CHECK(sub(Bundle{3.0, 4.0}, Bundle{1.0, 2.0}) == Bundle{2.0, 2.0});
    CHECK(scale(2.0, Bundle{1.0, -1.0}) == Bundle{2.0, -2.0});
    CHECK(dot(DualVector{1.0, 2.0}, Bundle{3.0, 2.0}) == doctest::Approx(7.0));
    CHECK_THROWS_AS(add(Bundle{1.0}, Bundle{1.0, 2.0}), std::invalid_argument);
  }

  TEST_CASE("order predicates") {
    CHECK(is_nonneg(Bundle{0.0, 1.0}));
    CHECK_FALSE(is_nonneg(Bundle{-1e-6, 1.0}));
    CHECK(is_nonneg(Bundle{-1e-9, 1.0}, 1e-8));
    CHECK(leq(Bundle{1.0, 1.0}, Bundle{1.0, 2.0}));
    CHECK_FALSE(leq(Bundle{1.0, 3.0}, Bundle{1.0, 2.0}));
    CHECK(sup_norm(Bundle{-3.0, 2.0}) == doctest::Approx(3.0));
  }

  TEST_CASE("order-unit norm") {
    CHECK(am_norm(Bundle{2.0, -6.0}, Bundle{4.0, 3.0}) == doctest::Approx(2.0));
    CHECK(am_norm(Bundle{0.0, 0.0}, Bundle{1.0, 1.0}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(am_norm(Bundle{1.0, 1.0}, Bundle{0.0, 1.0}),
                    std::invalid_argument);
  }

  TEST_CASE("principal ideal membership is a support test") {
    CHECK(ideal_membership(Bundle{0.0, 3.0}, Bundle{0.0, 1.0}));
    CHECK(ideal_membership(Bundle{0.0, 0.0}, Bundle{0.0, 0.0}));
    CHECK_FALSE(ideal_membership(Bundle{1.0, 0.0}, Bundle{0.0, 1.0}));
    CHECK(quasi_interior(Bundle{0.1, 2.0}));
    CHECK_FALSE(quasi_interior(Bundle{0.0, 2.0}));
  }

  TEST_CASE("sup and inf of linear functionals") {
    DualVector f{2.0, 1.0}, g{1.0, 3.0};
    Bundle x{1.0, 2.0};
    CHECK(rk_sup(f, g, x) == doctest::Approx(8.0));
    CHECK(rk_inf(f, g, x) == doctest::Approx(3.0));
    CHECK_THROWS_AS(rk_sup(f, g, Bundle{-1.0, 2.0}), std::invalid_argument);

    // agreement with the split-search oracle on a few fixed triples
    Rng rng(99);
    for (int t = 0; t < 25; ++t) {
      std::size_t l = 1 + rng.index(4);
      DualVector ff(l), gg(l);
      Bundle xx(l);
      for (std::size_t k = 0; k < l; ++k) {
        ff[k] = rng.uniform(-2.0, 2.0);
        gg[k] = rng.uniform(-2.0, 2.0);
        xx[k] = rng.uniform(0.0, 3.0);
      }
      CHECK(rk_sup(ff, gg, xx) ==
            doctest::Approx(oracles::rk_sup_grid(ff, gg, xx, 5)).epsilon(1e-12));
      CHECK(rk_inf(ff, gg, xx) ==
            doctest::Approx(oracles::rk_inf_grid(ff, gg, xx, 5)).epsilon(1e-12));
    }
  }

  TEST_CASE("constructive decomposition") {
    std::vector<Bundle> z = {Bundle{2.0}, Bundle{2.0}};
    std::vector<Bundle> caps = {Bundle{3.0}, Bundle{3.0}};
    Bundle floor{0.0};
    std::vector<Bundle> parts = riesz_decompose(z, caps, floor);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0] == Bundle{3.0});
    CHECK(parts[1] == Bundle{1.0});
    std::string why;
    CHECK(oracles::riesz_parts_ok(z, caps, floor, parts, 1e-12, &why));

    // totals above the caps are rejected
    CHECK_THROWS_AS(riesz_decompose({Bundle{3.0}, Bundle{3.0}},
                                    {Bundle{2.0}, Bundle{2.0}}, Bundle{0.0}),
                    std::invalid_argument);
    // a floor the total cannot cover is rejected
    CHECK_THROWS_AS(riesz_decompose({Bundle{1.0}, Bundle{1.0}},
                                    {Bundle{3.0}, Bundle{3.0}}, Bundle{2.0}),
                    std::invalid_argument);
  }

  TEST_CASE("classification table") {
    for (const oracles::ChartRow& row : oracles::chart_rows()) {
      CHECK(format_classification(classify_space(row.space)) == row.expected);
      CHECK(parse_space_family(row.name) == row.space.family);
    }
    CHECK_THROWS_AS(classify_space({SpaceFamily::EllP, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_space_family("banach"), std::invalid_argument);
  }
}

TEST_SUITE("information") {
  TEST_CASE("partition canonical form") {
    Partition p(3, {{2, 1}, {0}});
    REQUIRE(p.n_blocks() == 2);
    CHECK(p.block(0) == std::vector<std::size_t>{0});
    CHECK(p.block(1) == std::vector<std::size_t>{1, 2});
    CHECK(p.block_of(2) == 1);
    CHECK(p == Partition(3, {{0}, {1, 2}}));
  }

  TEST_CASE("partition validation") {
    CHECK_THROWS_AS(Partition(3, {{0, 1}, {1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(Partition(2, {{0}}), std::invalid_argument);
    CHECK_THROWS_AS(Partition(2, {{0}, {1}, {}}), std::invalid_argument);
    CHECK(Partition::discrete(3).n_blocks() == 3);
    CHECK(Partition::trivial(3).n_blocks() == 1);
  }

  TEST_CASE("join is the coarsest common refinement") {
    Partition a(3, {{0, 1}, {2}});
    Partition b(3, {{0}, {1, 2}});
    CHECK(join({a, b}) == Partition::discrete(3));
    CHECK(join({Partition::trivial(3), Partition::trivial(3)}) ==
          Partition::trivial(3));
    CHECK(join({a, Partition::trivial(3)}) == a);
  }

  TEST_CASE("prior validation") {
    CHECK_NOTHROW(Prior({0.25, 0.75}).validate());
    CHECK_THROWS_AS(Prior({0.5, 0.6}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(Prior({1.5, -0.5}).validate(), std::invalid_argument);
  }

  TEST_CASE("block storage and measurability") {
    Partition p(3, {{0, 1}, {2}});
    RandomBundle x =
        RandomBundle::from_blocks(p, {Bundle{1.0, 2.0}, Bundle{3.0, 4.0}});
    CHECK(x.at(0) == Bundle{1.0, 2.0});
    CHECK(x.at(1) == Bundle{1.0, 2.0});
    CHECK(x.at(2) == Bundle{3.0, 4.0});
    CHECK(is_measurable(x, p));
    CHECK_FALSE(is_measurable(x, Partition::trivial(3)));
    x.at(1)[0] = 1.5;
    CHECK_FALSE(is_measurable(x, p));
    CHECK(is_measurable(x, p, 0.6));
  }

  TEST_CASE("state aggregation helpers") {
    RandomBundle a(std::vector<Bundle>{Bundle{1.0, 5.0}, Bundle{3.0, 2.0}});
    CHECK(state_inf(a) == Bundle{1.0, 2.0});
    CHECK(sup_norm(a) == doctest::Approx(5.0));
    CHECK(leq(a, RandomBundle::constant(2, Bundle{3.0, 5.0})));
  }

  TEST_CASE("conditional expectation onto a partition") {
    Partition p(2, {{0, 1}});
    RandomBundle x(std::vector<Bundle>{Bundle{1.0}, Bundle{3.0}});
    Prior q({0.25, 0.75});
    RandomBundle m = project_measurable(x, p, q);
    CHECK(m.at(0)[0] == doctest::Approx(2.5));
    CHECK(m.at(1)[0] == doctest::Approx(2.5));
    CHECK(project_measurable(m, p, q) == m);
  }
}

TEST_SUITE("economy") {
  TEST_CASE("state utility closed forms") {
    StateUtility cd{UtilityForm::CobbDouglas, {0.5, 0.5}, 0.0};
    CHECK(cd.eval(Bundle{4.0, 1.0}) == doctest::Approx(2.0));
    StateUtility lin{UtilityForm::Linear, {1.0, 2.0}, 0.0};
    CHECK(lin.eval(Bundle{3.0, 2.0}) == doctest::Approx(7.0));
    StateUtility ll{UtilityForm::LogLinear, {2.0}, 0.0};
    CHECK(ll.eval(Bundle{std::exp(1.0) - 1.0}) == doctest::Approx(2.0));
    StateUtility ces{UtilityForm::CES, {1.0, 1.0}, 0.5};
    CHECK(ces.eval(Bundle{1.0, 4.0}) == doctest::Approx(9.0));
  }

  TEST_CASE("gradients match finite differences") {
    std::vector<StateUtility> forms = {
        {UtilityForm::CobbDouglas, {0.4, 0.5}, 0.0},
        {UtilityForm::Linear, {1.0, 2.0}, 0.0},
        {UtilityForm::LogLinear, {1.5, 0.5}, 0.0},
        {UtilityForm::CES, {1.0, 2.0}, 0.5},
        {UtilityForm::CES, {1.0, 2.0}, -1.0},
    };
    Bundle x{0.7, 1.3};
    for (const StateUtility& u : forms) {
      Bundle g(2);
      u.grad(x, g);
      for (std::size_t k = 0; k < 2; ++k) {
        Bundle xp = x, xm = x;
        xp[k] += 1e-6;
        xm[k] -= 1e-6;
        double fd = (u.eval(xp) - u.eval(xm)) / 2e-6;
        CHECK(g[k] == doctest::Approx(fd).epsilon(1e-4));
      }
    }
  }

  TEST_CASE("utility parameter validation") {
    CHECK_THROWS_AS(
        (StateUtility{UtilityForm::CobbDouglas, {0.7, 0.7}, 0.0}).validate(2),
        std::invalid_argument);
    CHECK_THROWS_AS(
        (StateUtility{UtilityForm::CES, {1.0, 1.0}, 0.0}).validate(2),
        std::invalid_argument);
    CHECK_THROWS_AS(
        (StateUtility{UtilityForm::CES, {1.0, 1.0}, 1.5}).validate(2),
        std::invalid_argument);
    CHECK_THROWS_AS(
        (StateUtility{UtilityForm::Linear, {1.0, -1.0}, 0.0}).validate(2),
        std::invalid_argument);
    CHECK_THROWS_AS(
        (StateUtility{UtilityForm::Linear, {1.0}, 0.0}).validate(2),
        std::invalid_argument);
  }

  TEST_CASE("expected utility is the prior-weighted sum") {
    Economy e;
    e.states = StateSpace({"a", "b"});
    e.dim = 1;
    Agent ag;
    ag.partition = Partition::discrete(2);
    ag.endowment_blocks = {Bundle{1.0}, Bundle{1.0}};
    ag.utility.per_state = {{UtilityForm::Linear, {1.0}, 0.0},
                            {UtilityForm::Linear, {1.0}, 0.0}};
    ag.prior = Prior({0.5, 0.5});
    e.agents = {ag};
    e.validate();
    RandomBundle x(std::vector<Bundle>{Bundle{2.0}, Bundle{3.0}});
    CHECK(expected_utility(e, 0, x) == doctest::Approx(2.5));
  }

  TEST_CASE("feasibility and admissibility") {
    Economy e = oracles::edgeworth_economy();
    CHECK(e.aggregate_endowment().at(0) == Bundle{1.0, 1.0});
    Allocation x = oracles::edgeworth_allocation();
    CHECK(is_feasible(e, x));
    CHECK(is_feasible(e, scaled_allocation(x, 0.9)));
    CHECK_FALSE(is_feasible(e, scaled_allocation(x, 1.01)));
    CHECK(is_feasible(e, scaled_allocation(x, 1.01), 0.02));
    Allocation neg = x;
    neg.plans[0].at(0)[0] = -0.1;
    CHECK_FALSE(is_feasible(e, neg));
    CHECK(plan_admissible(e, 0, x.plans[0]));
  }

  TEST_CASE("admissibility audits measurability of external plans") {
    Economy e = generate_economy(spec_of(5, 2, 2, 2, "complementary"));
    // one agent sees the states, the other does not
    std::size_t coarse = e.agents[0].partition.n_blocks() == 1 ? 0 : 1;
    RandomBundle nm(2, 2);
    nm.at(0) = Bundle{1.0, 1.0};
    nm.at(1) = Bundle{2.0, 1.0};
    CHECK_FALSE(plan_admissible(e, coarse, nm));
    CHECK(plan_admissible(e, 1 - coarse, nm));
  }

  TEST_CASE("assumption audit on generated profiles") {
    AuditReport strong = audit_assumptions(
        generate_economy(spec_of(3, 2, 2, 2, "strong")));
    CHECK(strong.pass);
    REQUIRE(strong.find("agent-positivity") != nullptr);
    CHECK(strong.find("agent-positivity")->verdict == AuditVerdict::HoldsStrong);
    CHECK(strong.find("utility-regularity")->verdict == AuditVerdict::Holds);

    AuditReport degen = audit_assumptions(
        generate_economy(spec_of(3, 2, 2, 2, "degenerate")));
    CHECK_FALSE(degen.pass);
    CHECK(degen.find("agent-positivity")->verdict == AuditVerdict::Fails);
  }

  TEST_CASE("endowment perturbation toward an allocation") {
    Economy e = generate_economy(spec_of(11, 2, 2, 2, "strong"));
    Allocation x;
    for (const Agent& a : e.agents)
      x.plans.push_back(scale(0.5, a.endowment()));
    Economy full = perturbed_economy(e, {1.0, 1.0}, x);
    CHECK(full.agents[0].endowment() == e.agents[0].endowment());
    Economy none = perturbed_economy(e, {0.0, 0.0}, x);
    CHECK(none.agents[0].endowment() == x.plans[0]);
    Economy half = perturbed_economy(e, {0.5, 0.5}, x);
    RandomBundle expect = add(scale(0.5, e.agents[0].endowment()),
                              scale(0.5, x.plans[0]));
    CHECK(half.agents[0].endowment() == expect);
    CHECK_THROWS_AS(perturbed_economy(e, {1.5, 0.5}, x), std::invalid_argument);
  }

  TEST_CASE("pooled-information twin and state restriction") {
    Economy e = generate_economy(spec_of(7, 2, 2, 2, "complementary"));
    Economy sym = symmetric_information_economy(e);
    Partition pooled = join({e.agents[0].partition, e.agents[1].partition});
    for (const Agent& a : sym.agents) {
      CHECK(a.partition == pooled);
      CHECK(a.endowment() ==
            e.agents[&a - sym.agents.data()].endowment());
    }
    Economy s0 = state_restriction(e, 0);
    CHECK(s0.n_states() == 1);
    CHECK(s0.agents[0].prior.q == std::vector<double>{1.0});
    CHECK(s0.agents[0].endowment().at(0) == e.agents[0].endowment().at(0));
    CHECK(s0.agents[0].utility.per_state[0] == e.agents[0].utility.per_state[0]);
  }
}

TEST_SUITE("optim") {
  TEST_CASE("knapsack multiplier solves the single-constraint projection") {
    // project (3,3) onto {y >= 0 : y0 + 2 y1 <= 2}: mu solves
    // (3-mu) + 2(3-2mu) = 2, so mu = 1.4 and y = (1.6, 0.2)
    double mu = optim::knapsack_multiplier({3.0, 3.0}, {1.0, 2.0}, 2.0);
    CHECK(mu == doctest::Approx(1.4));
    CHECK(optim::knapsack_multiplier({0.5, 0.5}, {1.0, 1.0}, 2.0) ==
          doctest::Approx(0.0));
  }

  TEST_CASE("projection respects weighted caps and leaves feasible points") {
    std::vector<Partition> parts = {Partition::trivial(1), Partition::trivial(1)};
    optim::Projector proj(parts, {1.0, 1.0},
                          RandomBundle::constant(1, Bundle{4.0}));
    optim::BlockVars v = {{Bundle{3.0}}, {Bundle{3.0}}};
    proj.project(v);
    CHECK(v[0][0][0] == doctest::Approx(2.0));
    CHECK(v[1][0][0] == doctest::Approx(2.0));

    optim::BlockVars w = {{Bundle{1.0}}, {Bundle{2.0}}};
    proj.project(w);
    CHECK(w[0][0][0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(w[1][0][0] == doctest::Approx(2.0).epsilon(1e-9));
  }

  TEST_CASE("projection across a coarse partition couples the states") {
    // one slot, trivial partition over two states with different caps: the
    // block value must fit under the tighter state
    std::vector<Partition> parts = {Partition::trivial(2)};
    RandomBundle caps(std::vector<Bundle>{Bundle{1.0}, Bundle{3.0}});
    optim::Projector proj(parts, {1.0}, caps);
    optim::BlockVars v = {{Bundle{5.0}}};
    proj.project(v);
    CHECK(v[0][0][0] == doctest::Approx(1.0));
  }

  TEST_CASE("relaxed projection is still hard-feasible") {
    std::vector<Partition> parts = {Partition::discrete(2),
                                    Partition::trivial(2)};
    RandomBundle caps(std::vector<Bundle>{Bundle{2.0, 1.0}, Bundle{1.5, 2.5}});
    optim::Projector proj(parts, {1.0, 2.0}, caps);
    proj.relax(1e-9, 150);
    Rng rng(4);
    for (int t = 0; t < 20; ++t) {
      optim::BlockVars v = {{Bundle{rng.uniform(0.0, 4.0), rng.uniform(0.0, 4.0)},
                             Bundle{rng.uniform(0.0, 4.0), rng.uniform(0.0, 4.0)}},
                            {Bundle{rng.uniform(0.0, 4.0), rng.uniform(0.0, 4.0)}}};
      proj.project(v);
      for (std::size_t s = 0; s < 2; ++s)
        for (std::size_t k = 0; k < 2; ++k) {
          double load = v[0][s][k] + 2.0 * v[1][0][k];
          CHECK(load <= caps.at(s)[k] + 1e-9);
        }
    }
  }

  TEST_CASE("feasible start is feasible") {
    std::vector<Partition> parts = {Partition::discrete(2),
                                    Partition::trivial(2)};
    RandomBundle caps(std::vector<Bundle>{Bundle{2.0, 1.0}, Bundle{1.0, 2.0}});
    optim::Projector proj(parts, {1.0, 3.0}, caps);
    optim::BlockVars v = proj.feasible_start();
    for (std::size_t s = 0; s < 2; ++s)
      for (std::size_t k = 0; k < 2; ++k)
        CHECK(v[0][s][k] + 3.0 * v[1][0][k] <= caps.at(s)[k] + 1e-12);
  }

  TEST_CASE("budget projection") {
    optim::BudgetProjector proj({{Bundle{1.0, 2.0}}}, 2.0);
    optim::BlockVars v = {{Bundle{3.0, 3.0}}};
    proj.project(v);
    CHECK(v[0][0][0] == doctest::Approx(1.6));
    CHECK(v[0][0][1] == doctest::Approx(0.2));
  }

  TEST_CASE("projected ascent solves a concave quadratic") {
    struct Quad {
      double c;
      double value(const optim::BlockVars& v) const {
        double d = v[0][0][0] - c;
        return -d * d;
      }
      void grad(const optim::BlockVars& v, optim::BlockVars& g) const {
        g[0][0][0] = -2.0 * (v[0][0][0] - c);
      }
    };
    std::vector<Partition> parts = {Partition::trivial(1)};
    optim::Projector proj(parts, {1.0},
                          RandomBundle::constant(1, Bundle{2.0}));
    optim::PgaOptions opt;
    Quad inside{1.5};
    optim::BlockVars v = {{Bundle{0.0}}};
    optim::PgaOutcome out = optim::project_gradient_ascent(inside, proj, v, opt);
    CHECK(v[0][0][0] == doctest::Approx(1.5).epsilon(1e-6));
    CHECK(out.plateaued);
    Quad capped{3.0};
    optim::BlockVars w = {{Bundle{0.0}}};
    optim::project_gradient_ascent(capped, proj, w, opt);
    CHECK(w[0][0][0] == doctest::Approx(2.0).epsilon(1e-6));
  }
}

TEST_SUITE("blocking") {
  TEST_CASE("coalition masks") {
    Coalition s = Coalition::from_mask(0b101);
    CHECK(s.members == std::vector<std::size_t>{0, 2});
    CHECK(s.mask() == 0b101);
    CHECK(Coalition::grand(3).members == std::vector<std::size_t>{0, 1, 2});
    Coalition bad;
    bad.members = {1, 1};
    CHECK_THROWS_AS(bad.validate(3), std::invalid_argument);
  }

  TEST_CASE("a singleton blocks an allocation below its endowment") {
    Economy e;
    e.states = StateSpace({"s0"});
    e.dim = 1;
    Agent ag;
    ag.partition = Partition::trivial(1);
    ag.utility.per_state = {{UtilityForm::LogLinear, {1.0}, 0.0}};
    ag.prior = Prior({1.0});
    ag.endowment_blocks = {Bundle{3.0}};
    e.agents.push_back(ag);
    ag.endowment_blocks = {Bundle{1.0}};
    e.agents.push_back(ag);
    e.validate();

    Allocation x;
    x.plans = {RandomBundle::constant(1, Bundle{1.0}),
               RandomBundle::constant(1, Bundle{3.0})};
    Coalition first = Coalition::from_mask(0b01);
    BlockResult br = private_block(e, first, x, 1e-6);
    REQUIRE(br.verdict == BlockVerdict::Blocks);
    double expect = std::log(4.0) - std::log(2.0);
    CHECK(br.certificate->delta == doctest::Approx(expect).epsilon(1e-4));
    std::string why;
    CHECK(validate_certificate(e, x, *br.certificate, 1e-6, &why));
  }

  TEST_CASE("gains from trade block the zero-trade allocation") {
    Economy e = oracles::edgeworth_economy();
    Allocation endow = endowment_allocation(e);
    BlockResult br = privately_dominated(e, endow, 1e-6);
    REQUIRE(br.verdict == BlockVerdict::Blocks);
    CHECK(br.certificate->coalition.members == std::vector<std::size_t>{0, 1});
    std::string why;
    CHECK(validate_certificate(e, endow, *br.certificate, 1e-6, &why));

    CoreResult core = private_core_membership(e, endow, 1e-6);
    CHECK(core.verdict == BlockVerdict::Blocks);
  }

  TEST_CASE("the equilibrium allocation is a core member") {
    Economy e = oracles::edgeworth_economy();
    CoreResult core =
        private_core_membership(e, oracles::edgeworth_allocation(), 1e-6);
    CHECK(core.verdict == BlockVerdict::None);
    CHECK(core.coalitions_checked == 3);
  }

  TEST_CASE("certificate validation rejects broken evidence") {
    Economy e = oracles::edgeworth_economy();
    Allocation endow = endowment_allocation(e);
    BlockResult br = privately_dominated(e, endow, 1e-6);
    REQUIRE(br.verdict == BlockVerdict::Blocks);
    BlockingCertificate good = *br.certificate;
    std::string why;

    BlockingCertificate bad = good;
    bad.weights[0] = 1.5;
    CHECK_FALSE(validate_certificate(e, endow, bad, 1e-6, &why));

    bad = good;
    for (RandomBundle& b : bad.bundles) b = scale(2.0, b);
    CHECK_FALSE(validate_certificate(e, endow, bad, 1e-6, &why));

    bad = good;
    bad.bundles[0] = scale(0.1, bad.bundles[0]);
    CHECK_FALSE(validate_certificate(e, endow, bad, 1e-6, &why));
  }

  TEST_CASE("measurability modes of certificate validation") {
    Economy e = generate_economy(spec_of(5, 2, 2, 2, "complementary"));
    std::size_t coarse = e.agents[0].partition.n_blocks() == 1 ? 0 : 1;
    BlockingCertificate cert;
    cert.coalition = Coalition::grand(2);
    cert.weights = {1.0, 1.0};
    cert.mode = MeasurabilityMode::Private;
    RandomBundle varying(2, 2);
    varying.at(0) = Bundle{0.1, 0.1};
    varying.at(1) = Bundle{0.2, 0.1};
    cert.bundles = {varying, varying};
    cert.margins = {1.0, 1.0};
    cert.delta = 1.0;
    std::string why;
    // a state-varying bundle for the coarse agent fails the private mode
    CHECK_FALSE(validate_certificate(e, endowment_allocation(e), cert, 1e-6, &why));
    CHECK(why.find(std::to_string(coarse)) != std::string::npos);
  }

  TEST_CASE("weighted scan finds a certificate on a dominated allocation") {
    Economy e = oracles::edgeworth_economy();
    Allocation shaved = scaled_allocation(oracles::edgeworth_allocation(), 0.9);
    BlockResult br = aubin_block(e, shaved, 1e-6, AubinPolicy{});
    REQUIRE(br.verdict == BlockVerdict::Blocks);
    std::string why;
    CHECK(validate_certificate(e, shaved, *br.certificate, 1e-6, &why));
    CHECK(br.certificate->mode == MeasurabilityMode::Private);

    BlockResult none = aubin_block(e, oracles::edgeworth_allocation(), 1e-6,
                                   AubinPolicy{});
    CHECK(none.verdict == BlockVerdict::None);
    CHECK(none.note.find("policy") != std::string::npos);
  }

  TEST_CASE("weighted scan is invariant to the thread count") {
    Economy e = generate_economy(spec_of(12, 2, 2, 2, "strong"));
    Allocation x;
    for (const Agent& a : e.agents)
      x.plans.push_back(scale(0.85, a.endowment()));
    parallel::set_threads(1);
    BlockResult one = aubin_block(e, x, 1e-6, AubinPolicy{});
    parallel::set_threads(4);
    BlockResult four = aubin_block(e, x, 1e-6, AubinPolicy{});
    parallel::set_threads(1);
    CHECK(one.verdict == four.verdict);
    CHECK(one.delta == four.delta);
    CHECK(one.note == four.note);
    if (one.certificate) {
      REQUIRE(four.certificate);
      CHECK(one.certificate->weights == four.certificate->weights);
      CHECK(one.certificate->bundles == four.certificate->bundles);
    }
  }

  TEST_CASE("event blocking on a complementary-information fixture") {
    Economy e = generate_economy(spec_of(5, 2, 2, 2, "complementary"));
    Allocation endow = endowment_allocation(e);
    ExPostResult ep = ex_post_block(e, endow, 1e-6);
    // zero trade leaves state-wise gains on the table whenever the state
    // restrictions admit any trade at all
    if (ep.verdict == BlockVerdict::Blocks) {
      REQUIRE(ep.certificate);
      CHECK_FALSE(ep.certificate->event.empty());
      for (const std::vector<double>& ms : ep.certificate->state_margins)
        for (double m : ms) CHECK(m > 1e-6 / 2);
    }
    CHECK(ep.verdict != BlockVerdict::Indeterminate);
  }

  TEST_CASE("fine domination pools information") {
    Economy e = generate_economy(spec_of(5, 2, 2, 2, "complementary"));
    Allocation endow = endowment_allocation(e);
    BlockResult strict = fine_dominate(e, endow, false, 1e-6);
    CHECK(strict.verdict != BlockVerdict::Indeterminate);
    if (strict.verdict == BlockVerdict::Blocks) {
      CHECK(strict.certificate->mode == MeasurabilityMode::Pooled);
      std::string why;
      CHECK(validate_certificate(e, endow, *strict.certificate, 1e-6, &why));
    }
  }

  TEST_CASE("max-min solver on a tiny concave program") {
    Economy e = oracles::edgeworth_economy();
    MaxMinSpec spec;
    spec.econ = &e;
    spec.members = {0, 1};
    spec.targets = {0.1, 0.1};
    spec.parts = {e.agents[0].partition, e.agents[1].partition};
    spec.weights = {1.0, 1.0};
    spec.caps = e.aggregate_endowment();
    MaxMinOutcome out = solve_maxmin(spec, BlockingConfig{});
    CHECK(out.converged);
    // equal split gives each agent utility 1/2; the best min-margin is 0.4
    CHECK(out.delta == doctest::Approx(0.4).epsilon(1e-3));
  }
}

TEST_SUITE("equilibrium") {
  TEST_CASE("price arithmetic") {
    PriceSystem p;
    p.pi = {DualVector{1.0, 2.0}};
    RandomBundle x = RandomBundle::constant(1, Bundle{3.0, 2.0});
    CHECK(budget_value(p, x) == doctest::Approx(7.0));
    CHECK(price_mass(p) == doctest::Approx(3.0));
    normalize_prices(p);
    CHECK(price_mass(p) == doctest::Approx(1.0));
    CHECK(p.pi[0][1] == doctest::Approx(2.0 / 3.0));
    PriceSystem zero;
    zero.pi = {DualVector{0.0, 0.0}};
    CHECK_THROWS_AS(normalize_prices(zero), std::invalid_argument);
  }

  TEST_CASE("demand matches the closed form") {
    Economy e = oracles::edgeworth_economy();
    PriceSystem p;
    p.pi = {DualVector{1.0, 1.0}};
    // wealth of agent 0 at these prices is 1; double it via the price level
    RandomBundle d = demand(e, 0, p);
    Bundle expect = oracles::cd_demand({0.5, 0.5}, {1.0, 1.0}, 1.0);
    CHECK(d.at(0)[0] == doctest::Approx(expect[0]).epsilon(1e-5));
    CHECK(d.at(0)[1] == doctest::Approx(expect[1]).epsilon(1e-5));
  }

  TEST_CASE("verification accepts the closed-form solution and flags drift") {
    Economy e = oracles::edgeworth_economy();
    EquilibriumReport ok = verify_equilibrium(
        e, oracles::edgeworth_allocation(), oracles::edgeworth_prices(), 1e-6);
    CHECK(ok.full_ok);
    CHECK(ok.clearing_gap == doctest::Approx(0.0).epsilon(1e-9));

    PriceSystem skew;
    skew.pi = {DualVector{0.8, 0.2}};
    EquilibriumReport bad = verify_equilibrium(
        e, oracles::edgeworth_allocation(), skew, 1e-6);
    CHECK_FALSE(bad.full_ok);
  }

  TEST_CASE("solver reproduces the closed form") {
    Economy e = oracles::edgeworth_economy();
    EquilibriumCertificate cert = solve_equilibrium(e);
    REQUIRE(cert.report.full_ok);
    Allocation expect = oracles::edgeworth_allocation();
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t k = 0; k < 2; ++k)
        CHECK(cert.allocation.plans[i].at(0)[k] ==
              doctest::Approx(expect.plans[i].at(0)[k]).epsilon(1e-6));
    PriceSystem ep = oracles::edgeworth_prices();
    for (std::size_t k = 0; k < 2; ++k)
      CHECK(cert.prices.pi[0][k] == doctest::Approx(ep.pi[0][k]).epsilon(1e-6));
  }

  TEST_CASE("zero-wealth agents classify the certificate as quasi") {
    Economy e = generate_economy(spec_of(2, 2, 2, 2, "degenerate"));
    EquilibriumCertificate cert = solve_equilibrium(e);
    CHECK(cert.kind == EqKind::Quasi);
    CHECK(cert.report.quasi_ok);
    UpgradeCheck up = quasi_to_full_upgrade_check(e, cert, 1e-6);
    // the sufficient irreducibility condition needs strictly positive
    // endowments, which the degenerate profile deliberately breaks
    CHECK(up.outcome == UpgradeCheck::Outcome::NotAsserted);
  }

  TEST_CASE("demand requires positive wealth") {
    Economy e = generate_economy(spec_of(2, 2, 2, 2, "degenerate"));
    PriceSystem p;
    p.pi = {DualVector{0.5, 0.5}, DualVector{0.5, 0.5}};
    normalize_prices(p);
    CHECK_THROWS_AS(demand(e, 0, p), std::invalid_argument);
  }
}

TEST_SUITE("continuum") {
  TEST_CASE("transport round trip is bitwise") {
    Economy e = generate_economy(spec_of(9, 3, 2, 2, "strong"));
    EquilibriumCertificate cert = solve_equilibrium(e);
    REQUIRE(cert.report.quasi_ok);
    StepAllocation f = to_continuum(cert.allocation);
    CHECK(f.n_types() == 3);
    CHECK(from_continuum(f) == cert.allocation);
    CHECK(step_feasible(e, f, 1e-9));
  }

  TEST_CASE("profile validation") {
    CoalitionProfile p;
    p.mass = {0.3, 0.3};
    CHECK_NOTHROW(p.validate(2));
    CHECK(p.total() == doctest::Approx(0.6));
    p.mass = {0.6, 0.1};
    CHECK_THROWS_AS(p.validate(2), std::invalid_argument);
    p.mass = {0.0, 0.0};
    CHECK_THROWS_AS(p.validate(2), std::invalid_argument);
  }

  TEST_CASE("certificate lift, shrink, and exact resizing") {
    Economy e = oracles::edgeworth_economy();
    Allocation shaved = scaled_allocation(oracles::edgeworth_allocation(), 0.9);
    BlockResult br = aubin_block(e, shaved, 1e-6, AubinPolicy{});
    REQUIRE(br.verdict == BlockVerdict::Blocks);

    ContinuumBlockingCertificate lifted =
        to_continuum_certificate(e, *br.certificate);
    StepAllocation xs = to_continuum(shaved);
    std::string why;
    CHECK(validate_continuum_certificate(e, xs, lifted, 1e-9, &why));

    ContinuumBlockingCertificate shrunk = lemma_shrink(e, lifted, xs);
    CHECK(validate_continuum_certificate(e, xs, shrunk, 1e-9, &why));
    CHECK(quasi_interior(shrunk.z));
    CHECK(shrunk.profile.mass == lifted.profile.mass);

    for (double m : {0.05, 0.4, shrunk.profile.total(), 0.95}) {
      if (m <= 0.0 || m >= 1.0) continue;
      ResizeOutcome ro = vind_resize_to_measure(e, shrunk, xs, m);
      CHECK(std::abs(ro.certificate.profile.total() - m) <= 1e-12);
      CHECK(validate_continuum_certificate(e, xs, ro.certificate, 1e-9, &why));
    }
  }

  TEST_CASE("resize parameter form splits at the certificate mass") {
    Economy e = oracles::edgeworth_economy();
    Allocation shaved = scaled_allocation(oracles::edgeworth_allocation(), 0.9);
    BlockResult br = aubin_block(e, shaved, 1e-6, AubinPolicy{});
    REQUIRE(br.verdict == BlockVerdict::Blocks);
    StepAllocation xs = to_continuum(shaved);
    ContinuumBlockingCertificate shrunk =
        lemma_shrink(e, to_continuum_certificate(e, *br.certificate), xs);
    double mu = shrunk.profile.total();

    ResizeOutcome down = vind_resize_to_measure(e, shrunk, xs, mu * 0.5);
    CHECK(down.note.find("scal") != std::string::npos);
    if (mu < 0.99) {
      double target = mu + (1.0 - mu) * 0.5;
      ResizeOutcome up = vind_resize_to_measure(e, shrunk, xs, target);
      CHECK(up.note.find("expansion") != std::string::npos);
      CHECK(std::abs(up.certificate.profile.total() - target) <= 1e-12);
    }
    CHECK_THROWS_AS(vind_resize(e, shrunk, xs, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(vind_resize(e, shrunk, xs, 1.0), std::invalid_argument);
    ContinuumBlockingCertificate no_z = to_continuum_certificate(e, *br.certificate);
    CHECK_THROWS_AS(vind_resize(e, no_z, xs, 0.5), std::invalid_argument);
  }

  TEST_CASE("continuum blocking mirrors the finite verdicts at full masses") {
    Economy e = oracles::edgeworth_economy();
    CoalitionProfile grand;
    grand.mass = {0.5, 0.5};
    StepAllocation eq = to_continuum(oracles::edgeworth_allocation());
    ContinuumBlockResult none = continuum_block(e, grand, eq, 1e-6);
    CHECK(none.verdict == BlockVerdict::None);

    StepAllocation shaved =
        to_continuum(scaled_allocation(oracles::edgeworth_allocation(), 0.9));
    ContinuumBlockResult hit = continuum_block(e, grand, shaved, 1e-6);
    REQUIRE(hit.verdict == BlockVerdict::Blocks);
    std::string why;
    CHECK(validate_continuum_certificate(e, shaved, *hit.certificate, 1e-6, &why));
  }
}

TEST_SUITE("verifier") {
  TEST_CASE("default perturbation grid") {
    Economy e = generate_economy(spec_of(3, 2, 2, 2, "strong"));
    VerifyOptions opt;
    opt.random_r = 10;
    std::vector<std::vector<double>> grid = default_r_grid(e, opt);
    CHECK(grid.size() == 25 + 10);
    for (const std::vector<double>& r : grid) {
      REQUIRE(r.size() == 2);
      for (double v : r) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
      }
    }
    VerifyOptions capped = opt;
    capped.grid_cap = 7;
    CHECK(default_r_grid(e, capped).size() == 7 + 10);
  }

  TEST_CASE("equilibrium confirms the forward suites") {
    Economy e = oracles::edgeworth_economy();
    Allocation x = oracles::edgeworth_allocation();
    VerifyOptions opt;
    opt.random_r = 8;
    TheoremReport t5 = check_theorem5(e, x, opt);
    CHECK(t5.verdict == SuiteVerdict::Confirmed);
    CHECK(t5.theorem == "T5");
    TheoremReport t6 = check_theorem6(e, x, {}, opt);
    CHECK(t6.verdict == SuiteVerdict::Confirmed);
    CHECK(t6.direction == "forward");
  }

  TEST_CASE("dominated allocations confirm the converse with a lifted r") {
    Economy e = oracles::edgeworth_economy();
    Allocation shaved = scaled_allocation(oracles::edgeworth_allocation(), 0.9);
    VerifyOptions opt;
    opt.random_r = 8;
    TheoremReport t6 = check_theorem6(e, shaved, {}, opt);
    REQUIRE(t6.verdict == SuiteVerdict::Confirmed);
    CHECK(t6.direction == "converse");
    REQUIRE_FALSE(t6.certificate_r.empty());
    for (double r : t6.certificate_r) {
      CHECK(r >= 0.0);
      CHECK(r <= 1.0);
    }
  }

  TEST_CASE("event suites confirm on a complementary fixture") {
    Economy e = generate_economy(spec_of(3, 2, 2, 2, "complementary"));
    EquilibriumCertificate cert = solve_equilibrium(e);
    REQUIRE(cert.report.quasi_ok);
    VerifyOptions opt;
    opt.random_r = 8;
    CHECK(check_theorem7(e, cert.allocation, {}, opt).verdict ==
          SuiteVerdict::Confirmed);
    CHECK(check_theorem8(e, cert.allocation, {}, opt).verdict ==
          SuiteVerdict::Confirmed);
    CHECK(check_corollary5(e, cert.allocation, {}, opt).verdict ==
          SuiteVerdict::Confirmed);
  }

  TEST_CASE("transport suite round-trips the solver output") {
    Economy e = generate_economy(spec_of(3, 2, 2, 2, "strong"));
    VerifyOptions opt;
    TheoremReport p2 = check_proposition2(e, opt);
    CHECK(p2.verdict == SuiteVerdict::Confirmed);
    bool bitwise = false;
    for (const std::string& ev : p2.evidence)
      if (ev.find("bitwise") != std::string::npos) bitwise = true;
    CHECK(bitwise);
  }

  TEST_CASE("unmet hypotheses are reported, not asserted") {
    Economy e = generate_economy(spec_of(2, 2, 2, 2, "degenerate"));
    Allocation endow = endowment_allocation(e);
    VerifyOptions opt;
    TheoremReport t5 = check_theorem5(e, endow, opt);
    CHECK(t5.verdict == SuiteVerdict::Indeterminate);
    CHECK(t5.note.find("hypotheses unmet") != std::string::npos);
  }

  TEST_CASE("grid entries are validated") {
    Economy e = generate_economy(spec_of(3, 2, 2, 2, "strong"));
    Allocation endow = endowment_allocation(e);
    VerifyOptions opt;
    CHECK_THROWS_AS(check_theorem6(e, endow, {{0.5, 1.5}}, opt),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_theorem6(e, endow, {{0.5}}, opt),
                    std::invalid_argument);
  }
}

TEST_SUITE("io") {
  TEST_CASE("canonical serialization round trip") {
    Economy e = generate_economy(spec_of(21, 3, 2, 3, "mixed"));
    EquilibriumCertificate cert = solve_equilibrium(e);
    io::EconomyFile f;
    f.economy = e;
    f.allocation = cert.allocation;
    f.prices = cert.prices;
    std::string text = io::serialize_economy_file(f);
    io::EconomyFile back = io::parse_economy_file(text, true);
    CHECK(back.economy == e);
    REQUIRE(back.allocation.has_value());
    CHECK(*back.allocation == cert.allocation);
    REQUIRE(back.prices.has_value());
    CHECK(*back.prices == cert.prices);
    CHECK(io::serialize_economy_file(back) == text);
  }

  TEST_CASE("digest identifies the economy, not the attachments") {
    Economy e = generate_economy(spec_of(21, 3, 2, 3, "mixed"));
    std::string d = io::economy_digest(e);
    CHECK(d.size() == 64);
    Economy e2 = e;
    e2.agents[0].endowment_blocks[0][0] += 0.5;
    CHECK(io::economy_digest(e2) != d);
  }

  TEST_CASE("parse errors carry positions and strictness bites") {
    CHECK_THROWS_AS(io::parse_economy_file("{ not json", false), io::ParseError);
    try {
      io::parse_economy_file("{\n  \"format\": \"radner/1\",\n  bad\n}", false);
      FAIL("expected a parse error");
    } catch (const io::ParseError& pe) {
      CHECK(pe.line() >= 1);
    }

    Economy e = generate_economy(spec_of(4, 2, 2, 2, "strong"));
    io::EconomyFile f;
    f.economy = e;
    std::string text = io::serialize_economy_file(f);
    std::string padded = text;
    padded.insert(padded.rfind("\n}"), ",\n  \"custom\": 1");
    CHECK_NOTHROW(io::parse_economy_file(padded, false));
    CHECK_THROWS_AS(io::parse_economy_file(padded, true), io::ParseError);
  }

  TEST_CASE("semantic validation surfaces as parse errors") {
    std::string bad = R"({
      "format": "radner/1",
      "states": ["a", "b"],
      "dim": 1,
      "agents": [
        {
          "partition": [["a"], ["a"]],
          "endowment": [[1.0], [1.0]],
          "utility": [{"form": "linear", "weights": [1.0]},
                       {"form": "linear", "weights": [1.0]}],
          "prior": [0.5, 0.5]
        }
      ]
    })";
    CHECK_THROWS_AS(io::parse_economy_file(bad, false), io::ParseError);
  }

  TEST_CASE("certificates survive serialization") {
    Economy e = oracles::edgeworth_economy();
    Allocation shaved = scaled_allocation(oracles::edgeworth_allocation(), 0.9);
    BlockResult br = privately_dominated(e, shaved, 1e-6);
    REQUIRE(br.verdict == BlockVerdict::Blocks);
    io::json j = io::blocking_certificate_json(*br.certificate);
    BlockingCertificate back = io::parse_blocking_certificate(j);
    std::string why;
    CHECK(validate_certificate(e, shaved, back, 1e-6, &why));
    CHECK(back.coalition.members == br.certificate->coalition.members);
    CHECK(back.delta == br.certificate->delta);
  }

  TEST_CASE("run reports are pure functions of their fields") {
    io::RunReport r;
    r.command = "verify --theorem 5";
    r.digest = "abc";
    r.version = "radner 1.0.0";
    r.seed = 7;
    r.body = {{"verdict", "confirmed"}};
    r.wall_time_ms = 123.0;
    std::string a = io::serialize_run_report(r);
    r.wall_time_ms = 9000.0;
    CHECK(io::serialize_run_report(r) == a);
    CHECK(a.find("wall_time") == std::string::npos);
    CHECK(a.find("123") == std::string::npos);
  }
}

#ifdef RADNER_CLI_PATH
namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  std::string cmd = std::string(RADNER_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path write_temp(const std::string& name,
                                 const std::string& text) {
  std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "radner_unit";
  std::filesystem::create_directories(dir);
  std::filesystem::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

} // namespace

TEST_SUITE("cli") {
  TEST_CASE("version and usage errors") {
    CHECK(run_cli("--version").exit_code == 0);
    CHECK(run_cli("definitely-not-a-command").exit_code == 64);
    CHECK(run_cli("solve").exit_code == 64);
    CHECK(run_cli("solve /nonexistent/economy.json").exit_code == 64);
  }

  TEST_CASE("solve emits a full report on the box instance") {
    io::EconomyFile f;
    f.economy = oracles::edgeworth_economy();
    std::filesystem::path p =
        write_temp("box.json", io::serialize_economy_file(f));
    CliResult r = run_cli("solve " + p.string());
    REQUIRE(r.exit_code == 0);
    io::json j = io::json::parse(r.out);
    CHECK(j["digest"] == io::economy_digest(f.economy));
    CHECK(j["body"]["certificate"]["report"]["full_ok"] == true);
    Allocation got = io::parse_allocation(j["body"]["certificate"]["allocation"]);
    Allocation expect = oracles::edgeworth_allocation();
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t k = 0; k < 2; ++k)
        CHECK(got.plans[i].at(0)[k] ==
              doctest::Approx(expect.plans[i].at(0)[k]).epsilon(1e-6));
  }

  TEST_CASE("exit codes separate verdicts from failures") {
    io::EconomyFile f;
    f.economy = oracles::edgeworth_economy();
    f.allocation = oracles::edgeworth_allocation();
    std::filesystem::path eq =
        write_temp("box_eq.json", io::serialize_economy_file(f));
    CHECK(run_cli("core " + eq.string() + " --mode private").exit_code == 0);

    f.allocation = scaled_allocation(oracles::edgeworth_allocation(), 0.9);
    std::filesystem::path shaved =
        write_temp("box_shaved.json", io::serialize_economy_file(f));
    CHECK(run_cli("core " + shaved.string() + " --mode private").exit_code == 1);
    CHECK(run_cli("core " + shaved.string() + " --mode aubin").exit_code == 1);

    // an allocation that is not usable for blocking analysis
    f.allocation = scaled_allocation(oracles::edgeworth_allocation(), -1.0);
    std::filesystem::path neg =
        write_temp("box_neg.json", io::serialize_economy_file(f));
    CHECK(run_cli("core " + neg.string() + " --mode private").exit_code == 66);
  }

  TEST_CASE("chart rows match the frozen table") {
    for (const oracles::ChartRow& row : oracles::chart_rows()) {
      std::string args = "chart " + row.name;
      if (row.space.p > 0.0)
        args += " --p " + std::to_string(row.space.p);
      CliResult r = run_cli(args);
      CHECK(r.exit_code == 0);
      CHECK(r.out == row.expected + "\n");
    }
    CHECK(run_cli("chart banach").exit_code == 64);
  }

  TEST_CASE("verify reports are byte-stable across thread counts") {
    Economy e = generate_economy(spec_of(5, 2, 2, 2, "complementary"));
    EquilibriumCertificate cert = solve_equilibrium(e);
    REQUIRE(cert.report.quasi_ok);
    io::EconomyFile f;
    f.economy = e;
    f.allocation = cert.allocation;
    f.prices = cert.prices;
    std::filesystem::path p =
        write_temp("comp5.json", io::serialize_economy_file(f));
    CliResult one = run_cli("verify " + p.string() + " --theorem 7 --seed 3 --threads 1");
    CliResult four = run_cli("verify " + p.string() + " --theorem 7 --seed 3 --threads 4");
    CHECK(one.exit_code == four.exit_code);
    CHECK(one.out == four.out);
  }
}
#endif
