#include "radner/io.hpp"

#include <fstream>
#include <sstream>
#include <string_view>

#include <openssl/evp.h>

namespace radner::io {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, 0, 0); }

const json& need(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) fail(where + ": missing key '" + key + "'");
  return *it;
}

void check_keys(const json& j, std::initializer_list<std::string_view> allowed,
                bool strict, const std::string& where) {
  if (!strict) return;
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (std::string_view a : allowed)
      if (it.key() == a) {
        ok = true;
        break;
      }
    if (!ok) fail(where + ": unknown key '" + it.key() + "'");
  }
}

double as_num(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where + ": expected a number");
  return j.get<double>();
}

std::size_t as_size(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    fail(where + ": expected a nonnegative integer");
  return static_cast<std::size_t>(j.get<long long>());
}

Bundle as_bundle(const json& j, std::size_t dim, const std::string& where) {
  if (!j.is_array() || j.size() != dim)
    fail(where + ": expected an array of " + std::to_string(dim) + " numbers");
  Bundle b(dim);
  for (std::size_t k = 0; k < dim; ++k) b[k] = as_num(j[k], where);
  return b;
}

RandomBundle as_random_bundle(const json& j, std::size_t n_states,
                              std::size_t dim, const std::string& where) {
  if (!j.is_array() || j.size() != n_states)
    fail(where + ": expected one bundle per state (" + std::to_string(n_states) +
         ")");
  std::vector<Bundle> per_state(n_states);
  for (std::size_t s = 0; s < n_states; ++s)
    per_state[s] = as_bundle(j[s], dim, where + "[" + std::to_string(s) + "]");
  return RandomBundle(std::move(per_state));
}

json bundle_json(const Bundle& b) {
  json a = json::array();
  for (std::size_t k = 0; k < b.dim(); ++k) a.push_back(b[k]);
  return a;
}

json random_bundle_json(const RandomBundle& x) {
  json a = json::array();
  for (std::size_t s = 0; s < x.n_states(); ++s) a.push_back(bundle_json(x.at(s)));
  return a;
}

const char* form_name(UtilityForm f) {
  switch (f) {
    case UtilityForm::CobbDouglas: return "cobb_douglas";
    case UtilityForm::CES: return "ces";
    case UtilityForm::Linear: return "linear";
    case UtilityForm::LogLinear: return "log_linear";
  }
  return "cobb_douglas";
}

UtilityForm form_from_name(const std::string& name, const std::string& where) {
  if (name == "cobb_douglas") return UtilityForm::CobbDouglas;
  if (name == "ces") return UtilityForm::CES;
  if (name == "linear") return UtilityForm::Linear;
  if (name == "log_linear") return UtilityForm::LogLinear;
  fail(where + ": unknown utility form '" + name + "'");
}

json economy_json(const Economy& e) {
  json j = json::object();
  j["format"] = "radner/1";
  j["states"] = e.states.labels;
  j["dim"] = e.dim;
  json agents = json::array();
  for (const Agent& a : e.agents) {
    json aj = json::object();
    json part = json::array();
    for (const std::vector<std::size_t>& block : a.partition.blocks()) {
      json bj = json::array();
      for (std::size_t s : block) bj.push_back(e.states.labels[s]);
      part.push_back(std::move(bj));
    }
    aj["partition"] = std::move(part);
    json endow = json::array();
    for (const Bundle& w : a.endowment_blocks) endow.push_back(bundle_json(w));
    aj["endowment"] = std::move(endow);
    json ut = json::array();
    for (const StateUtility& u : a.utility.per_state) {
      json uj = json::object();
      uj["form"] = form_name(u.form);
      uj["weights"] = u.weights;
      if (u.form == UtilityForm::CES) uj["rho"] = u.rho;
      ut.push_back(std::move(uj));
    }
    aj["utility"] = std::move(ut);
    aj["prior"] = a.prior.q;
    agents.push_back(std::move(aj));
  }
  j["agents"] = std::move(agents);
  return j;
}

EconomyFile economy_from_json(const json& j, bool strict) {
  if (!j.is_object()) fail("top level: expected an object");
  check_keys(j, {"format", "states", "dim", "agents", "allocation", "prices"},
             strict, "top level");
  const json& fj = need(j, "format", "top level");
  if (!fj.is_string() || fj.get<std::string>() != "radner/1")
    fail("top level: format must be \"radner/1\"");

  const json& sj = need(j, "states", "top level");
  if (!sj.is_array() || sj.empty()) fail("states: expected a nonempty array");
  std::vector<std::string> labels;
  for (const json& l : sj) {
    if (!l.is_string()) fail("states: labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  for (std::size_t a = 0; a < labels.size(); ++a)
    for (std::size_t b = a + 1; b < labels.size(); ++b)
      if (labels[a] == labels[b]) fail("states: duplicate label '" + labels[a] + "'");

  EconomyFile out;
  out.economy.states = StateSpace(labels);
  const std::size_t n_states = labels.size();
  out.economy.dim = as_size(need(j, "dim", "top level"), "dim");
  if (out.economy.dim == 0) fail("dim: must be positive");
  const std::size_t dim = out.economy.dim;

  const json& agj = need(j, "agents", "top level");
  if (!agj.is_array() || agj.empty()) fail("agents: expected a nonempty array");
  for (std::size_t i = 0; i < agj.size(); ++i) {
    const std::string where = "agents[" + std::to_string(i) + "]";
    const json& aj = agj[i];
    if (!aj.is_object()) fail(where + ": expected an object");
    check_keys(aj, {"partition", "endowment", "utility", "prior"}, strict, where);

    const json& pj = need(aj, "partition", where);
    if (!pj.is_array() || pj.empty())
      fail(where + ".partition: expected a nonempty array of blocks");
    std::vector<std::vector<std::size_t>> blocks;
    for (const json& bj : pj) {
      if (!bj.is_array() || bj.empty())
        fail(where + ".partition: blocks must be nonempty label arrays");
      std::vector<std::size_t> block;
      for (const json& lj : bj) {
        if (!lj.is_string()) fail(where + ".partition: labels must be strings");
        block.push_back(out.economy.states.index_of(lj.get<std::string>()));
      }
      blocks.push_back(std::move(block));
    }

    Agent agent;
    agent.partition = Partition(n_states, blocks);

    const json& ej = need(aj, "endowment", where);
    if (!ej.is_array() || ej.size() != blocks.size())
      fail(where + ".endowment: expected one bundle per partition block");
    agent.endowment_blocks.assign(agent.partition.n_blocks(), Bundle(dim));
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      // file blocks may be listed in any order; route each row to the
      // canonical slot of the block it describes
      std::size_t slot = agent.partition.block_of(blocks[k][0]);
      agent.endowment_blocks[slot] =
          as_bundle(ej[k], dim, where + ".endowment[" + std::to_string(k) + "]");
    }

    const json& uj = need(aj, "utility", where);
    if (!uj.is_array() || uj.size() != n_states)
      fail(where + ".utility: expected one entry per state");
    agent.utility.per_state.resize(n_states);
    for (std::size_t s = 0; s < n_states; ++s) {
      const std::string uw = where + ".utility[" + std::to_string(s) + "]";
      const json& one = uj[s];
      if (!one.is_object()) fail(uw + ": expected an object");
      check_keys(one, {"form", "weights", "rho"}, strict, uw);
      StateUtility su;
      const json& fo = need(one, "form", uw);
      if (!fo.is_string()) fail(uw + ".form: expected a string");
      su.form = form_from_name(fo.get<std::string>(), uw);
      const json& wj = need(one, "weights", uw);
      if (!wj.is_array() || wj.size() != dim)
        fail(uw + ".weights: expected " + std::to_string(dim) + " numbers");
      su.weights.resize(dim);
      for (std::size_t k = 0; k < dim; ++k)
        su.weights[k] = as_num(wj[k], uw + ".weights");
      if (su.form == UtilityForm::CES)
        su.rho = as_num(need(one, "rho", uw), uw + ".rho");
      else if (auto it = one.find("rho"); it != one.end())
        su.rho = as_num(*it, uw + ".rho");
      agent.utility.per_state[s] = std::move(su);
    }

    const json& qj = need(aj, "prior", where);
    if (!qj.is_array() || qj.size() != n_states)
      fail(where + ".prior: expected " + std::to_string(n_states) + " numbers");
    std::vector<double> q(n_states);
    for (std::size_t s = 0; s < n_states; ++s)
      q[s] = as_num(qj[s], where + ".prior");
    agent.prior = Prior(std::move(q));

    out.economy.agents.push_back(std::move(agent));
  }

  out.economy.validate();

  if (auto it = j.find("allocation"); it != j.end() && !it->is_null()) {
    Allocation x = parse_allocation(*it);
    if (x.n_agents() != out.economy.n_agents())
      fail("allocation: expected one plan per agent");
    for (const RandomBundle& p : x.plans)
      if (p.n_states() != n_states || p.dim() != dim)
        fail("allocation: plan shape mismatch");
    out.allocation = std::move(x);
  }
  if (auto it = j.find("prices"); it != j.end() && !it->is_null()) {
    PriceSystem p = parse_prices(*it);
    if (p.n_states() != n_states || p.dim() != dim)
      fail("prices: shape mismatch");
    out.prices = std::move(p);
  }
  return out;
}

} // namespace

EconomyFile parse_economy_file(const std::string& text, bool strict) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& ex) {
    std::size_t pos = ex.byte > 0 ? ex.byte - 1 : 0;
    if (pos > text.size()) pos = text.size();
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(ex.what(), line, col);
  }
  try {
    return economy_from_json(j, strict);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& ex) {
    throw ParseError(ex.what(), 0, 0);
  }
}

EconomyFile load_economy_file(const std::string& path, bool strict) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'", 0, 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_economy_file(buf.str(), strict);
}

std::string serialize_economy_file(const EconomyFile& f) {
  json j = economy_json(f.economy);
  if (f.allocation) j["allocation"] = allocation_json(*f.allocation);
  if (f.prices) j["prices"] = prices_json(*f.prices);
  return j.dump(2) + "\n";
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * static_cast<std::size_t>(len));
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xf]);
  }
  return out;
}

std::string economy_digest(const Economy& e) {
  EconomyFile f;
  f.economy = e;
  return sha256_hex(serialize_economy_file(f));
}

json allocation_json(const Allocation& x) {
  json a = json::array();
  for (const RandomBundle& p : x.plans) a.push_back(random_bundle_json(p));
  return a;
}

json prices_json(const PriceSystem& p) {
  json a = json::array();
  for (const DualVector& pi : p.pi) {
    json row = json::array();
    for (std::size_t k = 0; k < pi.dim(); ++k) row.push_back(pi[k]);
    a.push_back(std::move(row));
  }
  return a;
}

json equilibrium_report_json(const EquilibriumReport& r) {
  json j = json::object();
  j["plans_admissible"] = r.plans_admissible;
  j["feasible"] = r.feasible;
  j["prices_admissible"] = r.prices_admissible;
  j["nontrivial"] = r.nontrivial;
  j["wealth"] = r.wealth;
  j["budget_gap"] = r.budget_gap;
  j["maximality_gap"] = r.maximality_gap;
  j["demand_checked"] = r.demand_checked;
  j["clearing_gap"] = r.clearing_gap;
  j["state_value_gap"] = r.state_value_gap;
  j["full_ok"] = r.full_ok;
  j["quasi_ok"] = r.quasi_ok;
  j["note"] = r.note;
  return j;
}

json equilibrium_certificate_json(const EquilibriumCertificate& c) {
  json j = json::object();
  j["kind"] = c.kind == EqKind::Full ? "full" : "quasi";
  j["allocation"] = allocation_json(c.allocation);
  j["prices"] = prices_json(c.prices);
  j["lambda"] = c.lambda;
  j["planner_value"] = c.planner_value;
  j["outer_iters"] = c.outer_iters;
  j["converged"] = c.converged;
  j["report"] = equilibrium_report_json(c.report);
  j["note"] = c.note;
  return j;
}

json blocking_certificate_json(const BlockingCertificate& c) {
  json j = json::object();
  j["coalition"] = c.coalition.members;
  j["weights"] = c.weights;
  j["mode"] = c.mode == MeasurabilityMode::Private ? "private" : "pooled";
  json bundles = json::array();
  for (const RandomBundle& b : c.bundles) bundles.push_back(random_bundle_json(b));
  j["bundles"] = std::move(bundles);
  j["margins"] = c.margins;
  j["delta"] = c.delta;
  j["slack"] = random_bundle_json(c.slack);
  return j;
}

json ex_post_certificate_json(const ExPostCertificate& c, const StateSpace& states) {
  json j = json::object();
  j["coalition"] = c.coalition.members;
  json ev = json::array();
  for (std::size_t s : c.event) ev.push_back(states.labels[s]);
  j["event"] = std::move(ev);
  json sb = json::array();
  for (const std::vector<Bundle>& per_member : c.state_bundles) {
    json row = json::array();
    for (const Bundle& b : per_member) row.push_back(bundle_json(b));
    sb.push_back(std::move(row));
  }
  j["state_bundles"] = std::move(sb);
  j["state_margins"] = c.state_margins;
  return j;
}

json continuum_certificate_json(const ContinuumBlockingCertificate& c) {
  json j = json::object();
  j["mass"] = c.profile.mass;
  json bundles = json::array();
  for (const RandomBundle& b : c.bundles) bundles.push_back(random_bundle_json(b));
  j["bundles"] = std::move(bundles);
  j["margins"] = c.margins;
  j["delta"] = c.delta;
  j["surplus"] = random_bundle_json(c.surplus);
  j["z"] = bundle_json(c.z);
  return j;
}

json theorem_report_json(const TheoremReport& r) {
  json j = json::object();
  j["theorem"] = r.theorem;
  j["digest"] = r.digest;
  j["direction"] = r.direction;
  switch (r.verdict) {
    case SuiteVerdict::Confirmed: j["verdict"] = "confirmed"; break;
    case SuiteVerdict::CounterexampleCandidate:
      j["verdict"] = "counterexample-candidate";
      break;
    case SuiteVerdict::Indeterminate: j["verdict"] = "indeterminate"; break;
  }
  j["policy"] = r.policy;
  j["note"] = r.note;
  j["evidence"] = r.evidence;
  j["certificate"] =
      r.certificate ? blocking_certificate_json(*r.certificate) : json(nullptr);
  j["certificate_r"] = r.certificate_r;
  return j;
}

Allocation parse_allocation(const json& j) {
  if (!j.is_array() || j.empty()) fail("allocation: expected a nonempty array");
  Allocation x;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& pj = j[i];
    if (!pj.is_array() || pj.empty() || !pj[0].is_array())
      fail("allocation[" + std::to_string(i) + "]: expected per-state bundles");
    std::size_t dim = pj[0].size();
    x.plans.push_back(as_random_bundle(pj, pj.size(), dim,
                                       "allocation[" + std::to_string(i) + "]"));
  }
  return x;
}

PriceSystem parse_prices(const json& j) {
  if (!j.is_array() || j.empty()) fail("prices: expected a nonempty array");
  PriceSystem p;
  for (std::size_t s = 0; s < j.size(); ++s) {
    const json& row = j[s];
    if (!row.is_array() || row.empty())
      fail("prices[" + std::to_string(s) + "]: expected a coordinate array");
    DualVector pi(row.size());
    for (std::size_t k = 0; k < row.size(); ++k)
      pi[k] = as_num(row[k], "prices[" + std::to_string(s) + "]");
    p.pi.push_back(std::move(pi));
  }
  return p;
}

BlockingCertificate parse_blocking_certificate(const json& j) {
  if (!j.is_object()) fail("certificate: expected an object");
  BlockingCertificate c;
  const json& co = need(j, "coalition", "certificate");
  if (!co.is_array() || co.empty())
    fail("certificate.coalition: expected a nonempty index array");
  for (const json& m : co)
    c.coalition.members.push_back(as_size(m, "certificate.coalition"));
  const json& wj = need(j, "weights", "certificate");
  if (!wj.is_array()) fail("certificate.weights: expected an array");
  for (const json& w : wj) c.weights.push_back(as_num(w, "certificate.weights"));
  const json& mo = need(j, "mode", "certificate");
  if (!mo.is_string()) fail("certificate.mode: expected a string");
  const std::string mode = mo.get<std::string>();
  if (mode == "private")
    c.mode = MeasurabilityMode::Private;
  else if (mode == "pooled")
    c.mode = MeasurabilityMode::Pooled;
  else
    fail("certificate.mode: unknown mode '" + mode + "'");
  const json& bj = need(j, "bundles", "certificate");
  if (!bj.is_array() || bj.size() != c.coalition.members.size())
    fail("certificate.bundles: expected one plan per member");
  for (std::size_t i = 0; i < bj.size(); ++i) {
    const json& pj = bj[i];
    if (!pj.is_array() || pj.empty() || !pj[0].is_array())
      fail("certificate.bundles: expected per-state bundles");
    c.bundles.push_back(as_random_bundle(pj, pj.size(), pj[0].size(),
                                         "certificate.bundles[" +
                                             std::to_string(i) + "]"));
  }
  const json& mj = need(j, "margins", "certificate");
  if (!mj.is_array()) fail("certificate.margins: expected an array");
  for (const json& m : mj) c.margins.push_back(as_num(m, "certificate.margins"));
  c.delta = as_num(need(j, "delta", "certificate"), "certificate.delta");
  if (auto it = j.find("slack"); it != j.end() && it->is_array() && !it->empty())
    c.slack = as_random_bundle(*it, it->size(), (*it)[0].size(), "certificate.slack");
  return c;
}

std::string serialize_run_report(const RunReport& r) {
  json j = json::object();
  j["format"] = "radner-report/1";
  j["command"] = r.command;
  j["tool"] = r.version;
  j["digest"] = r.digest;
  j["seed"] = r.seed;
  j["body"] = r.body;
  return j.dump(2) + "\n";
}

} // namespace radner::io
