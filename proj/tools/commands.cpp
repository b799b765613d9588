#include "commands.hpp"

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "radner/blocking.hpp"
#include "radner/continuum.hpp"
#include "radner/economy.hpp"
#include "radner/equilibrium.hpp"
#include "radner/generate.hpp"
#include "radner/io.hpp"
#include "radner/lattice.hpp"
#include "radner/parallel.hpp"
#include "radner/verifier.hpp"

namespace radner::cli {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitCertificate = 1;
constexpr int kExitQuasi = 2;
constexpr int kExitIndeterminate = 3;
constexpr int kExitUsage = 64;
constexpr int kExitAudit = 65;
constexpr int kExitBadAllocation = 66;
constexpr int kExitInternal = 70;

/// Usage-level problem found after CLI11 parsing (bad flag values, shape
/// mismatches between flags and the file).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string dtos(double v) { return io::json(v).dump(); }

struct Options {
  std::string file;
  std::string allocation_path;
  std::string out;
  std::string mode = "private";
  std::string theorem;
  std::string policy_text;
  std::string r_grid_text;
  std::string epsilon_text;
  double tol = 1e-6;
  std::uint64_t seed = 0;
  int threads = 1;
  bool strict = false;
};

void write_out_file(const std::string& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open output file '" + path + "'");
  f << bytes;
}

/// Reports go to stdout byte for byte (and to --out when given); the wall
/// time is stderr-only so report bytes stay a pure function of input,
/// seed, and flags.
void emit_report(const io::RunReport& rep, const Options& opt) {
  const std::string bytes = io::serialize_run_report(rep);
  std::cout << bytes;
  if (!opt.out.empty()) write_out_file(opt.out, bytes);
  std::cerr << "wall_time_ms: " << rep.wall_time_ms << "\n";
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

AubinPolicy parse_policy(const std::string& text) {
  AubinPolicy policy;
  if (text.empty()) return policy;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw UsageError("--policy expects key=value pairs, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    try {
      if (key == "dyadic")
        policy.dyadic_depth = std::stoi(val);
      else if (key == "refine")
        policy.refine_rounds = std::stoi(val);
      else if (key == "probes")
        policy.refine_probes = std::stoi(val);
      else if (key == "near")
        policy.near_complete_delta = std::stod(val);
      else
        throw UsageError("--policy: unknown key '" + key + "'");
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception&) {
      throw UsageError("--policy: bad value '" + val + "' for '" + key + "'");
    }
  }
  if (policy.dyadic_depth < 0 || policy.refine_rounds < 0 ||
      policy.refine_probes < 0 || policy.near_complete_delta <= 0.0 ||
      policy.near_complete_delta >= 1.0)
    throw UsageError("--policy: values out of range");
  return policy;
}

std::vector<std::vector<double>> parse_r_grid(const std::string& text,
                                              std::size_t n) {
  std::vector<std::vector<double>> grid;
  if (text.empty()) return grid;
  std::istringstream points(text);
  std::string point;
  while (std::getline(points, point, ';')) {
    std::vector<double> r;
    std::istringstream coords(point);
    std::string c;
    while (std::getline(coords, c, ',')) {
      try {
        r.push_back(std::stod(c));
      } catch (const std::exception&) {
        throw UsageError("--r-grid: bad number '" + c + "'");
      }
    }
    if (r.size() != n)
      throw UsageError("--r-grid: point '" + point + "' has " +
                       std::to_string(r.size()) + " coordinates, expected " +
                       std::to_string(n));
    for (double v : r)
      if (!(v >= 0.0 && v <= 1.0))
        throw UsageError("--r-grid: coordinates must lie in [0,1]");
    grid.push_back(std::move(r));
  }
  if (grid.empty()) throw UsageError("--r-grid: no points parsed");
  return grid;
}

std::vector<double> parse_epsilons(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    double m = 0.0;
    try {
      m = std::stod(item);
    } catch (const std::exception&) {
      throw UsageError("--epsilon: bad number '" + item + "'");
    }
    if (!(m > 0.0 && m < 1.0))
      throw UsageError("--epsilon: measures must lie strictly inside (0,1)");
    out.push_back(m);
  }
  if (out.empty()) throw UsageError("--epsilon: expected a comma list");
  return out;
}

const char* verdict_word(AuditVerdict v) {
  switch (v) {
    case AuditVerdict::Holds: return "holds";
    case AuditVerdict::HoldsStrong: return "holds-strong";
    case AuditVerdict::Fails: return "fails";
    case AuditVerdict::Undecided: return "undecided";
  }
  return "undecided";
}

io::json audit_json(const AuditReport& a) {
  io::json rows = io::json::array();
  for (const AuditEntry& en : a.entries) {
    io::json row = io::json::object();
    row["name"] = en.name;
    row["verdict"] = verdict_word(en.verdict);
    row["detail"] = en.detail;
    rows.push_back(std::move(row));
  }
  io::json j = io::json::object();
  j["entries"] = std::move(rows);
  j["pass"] = a.pass;
  return j;
}

Allocation load_allocation_arg(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io::ParseError("cannot open '" + path + "'", 0, 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  io::json j;
  try {
    j = io::json::parse(buf.str());
  } catch (const io::json::parse_error& ex) {
    throw io::ParseError(ex.what(), 0, 0);
  }
  if (j.is_object()) {
    auto it = j.find("allocation");
    if (it == j.end() || it->is_null())
      throw io::ParseError("allocation file: no 'allocation' entry", 0, 0);
    return io::parse_allocation(*it);
  }
  return io::parse_allocation(j);
}

/// Pull the working allocation: --allocation wins, then the file's embedded
/// one. Shape must match the economy.
Allocation resolve_allocation(const io::EconomyFile& f, const Options& opt) {
  std::optional<Allocation> x;
  if (!opt.allocation_path.empty())
    x = load_allocation_arg(opt.allocation_path);
  else if (f.allocation)
    x = f.allocation;
  if (!x)
    throw UsageError(
        "no allocation: embed one in the file or pass --allocation");
  const Economy& e = f.economy;
  if (x->n_agents() != e.n_agents())
    throw UsageError("allocation: expected one plan per agent");
  for (const RandomBundle& p : x->plans)
    if (p.n_states() != e.states.size() || p.dim() != e.dim)
      throw UsageError("allocation: plan shape does not match the economy");
  return std::move(*x);
}

/// Gate shared by core and vind: the allocation must be usable as the
/// status quo of a blocking program. Admissibility failures exit 66.
void require_usable_allocation(const Economy& e, const Allocation& x,
                               double tol, bool need_measurable,
                               std::string* why) {
  for (std::size_t i = 0; i < x.plans.size(); ++i) {
    if (!is_nonneg(x.plans[i])) {
      *why = "plan " + std::to_string(i) + " has a negative coordinate";
      throw std::domain_error(*why);
    }
    if (need_measurable && !plan_admissible(e, i, x.plans[i], tol)) {
      *why = "plan " + std::to_string(i) +
             " is not measurable for its agent's information";
      throw std::domain_error(*why);
    }
  }
  if (!is_feasible(e, x, tol)) {
    *why = "allocation is not feasible";
    throw std::domain_error(*why);
  }
}

io::RunReport base_run(const std::string& command, const Economy& e,
                       const Options& opt) {
  io::RunReport r;
  r.command = command;
  r.digest = io::economy_digest(e);
  r.version = kToolVersion;
  r.seed = opt.seed;
  r.body = io::json::object();
  return r;
}

int cmd_solve(const Options& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const io::EconomyFile f = io::load_economy_file(opt.file, opt.strict);
  const Economy& e = f.economy;

  const AuditReport audit = audit_assumptions(e);
  for (const char* name : {"utility-regularity", "aggregate-nonzero"}) {
    const AuditEntry* en = audit.find(name);
    if (en != nullptr && en->verdict == AuditVerdict::Fails) {
      std::cerr << "audit failure: " << name << ": " << en->detail << "\n";
      return kExitAudit;
    }
  }

  NegishiOptions no;
  no.tol = opt.tol;
  const EquilibriumCertificate cert = solve_equilibrium(e, no);

  io::RunReport rep = base_run("solve --tol " + dtos(opt.tol), e, opt);
  rep.body["options"] = io::json{{"tol", opt.tol}};
  rep.body["audit"] = audit_json(audit);
  rep.body["certificate"] = io::equilibrium_certificate_json(cert);
  if (cert.quasi_only()) {
    const UpgradeCheck up = quasi_to_full_upgrade_check(e, cert, opt.tol);
    io::json uj = io::json::object();
    switch (up.outcome) {
      case UpgradeCheck::Outcome::Upgraded: uj["outcome"] = "upgraded"; break;
      case UpgradeCheck::Outcome::NotAsserted:
        uj["outcome"] = "not-asserted";
        break;
      case UpgradeCheck::Outcome::CounterexampleResidual:
        uj["outcome"] = "counterexample-residual";
        break;
    }
    uj["detail"] = up.detail;
    rep.body["upgrade"] = std::move(uj);
  }
  rep.wall_time_ms = elapsed_ms(t0);
  emit_report(rep, opt);

  if (cert.report.full_ok) return kExitOk;
  if (cert.report.quasi_ok) return kExitQuasi;
  return kExitIndeterminate;
}

int cmd_core(const Options& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const io::EconomyFile f = io::load_economy_file(opt.file, opt.strict);
  const Economy& e = f.economy;
  const Allocation x = resolve_allocation(f, opt);

  const bool need_measurable =
      opt.mode == "private" || opt.mode == "aubin" || opt.mode == "fine";
  std::string why;
  require_usable_allocation(e, x, opt.tol, need_measurable, &why);

  const AubinPolicy policy = parse_policy(opt.policy_text);
  std::string echo = "core --mode " + opt.mode + " --tol " + dtos(opt.tol);
  if (opt.mode == "aubin") echo += " --policy " + policy.describe();
  io::RunReport rep = base_run(echo, e, opt);
  rep.body["mode"] = opt.mode;
  rep.body["options"] = io::json{{"tol", opt.tol}};
  rep.body["allocation"] = io::allocation_json(x);

  BlockVerdict verdict = BlockVerdict::Indeterminate;
  std::string note;
  if (opt.mode == "private") {
    const CoreResult res = private_core_membership(e, x, opt.tol);
    verdict = res.verdict;
    note = res.note;
    rep.body["coalitions_checked"] = res.coalitions_checked;
    rep.body["certificate"] = res.certificate
                                  ? io::blocking_certificate_json(*res.certificate)
                                  : io::json(nullptr);
  } else if (opt.mode == "aubin") {
    const BlockResult res = aubin_block(e, x, opt.tol, policy);
    verdict = res.verdict;
    note = res.note;
    rep.body["policy"] = policy.describe();
    rep.body["certificate"] = res.certificate
                                  ? io::blocking_certificate_json(*res.certificate)
                                  : io::json(nullptr);
  } else if (opt.mode == "expost") {
    const ExPostResult res = ex_post_block(e, x, opt.tol);
    verdict = res.verdict;
    note = res.note;
    rep.body["certificate"] =
        res.certificate
            ? io::ex_post_certificate_json(*res.certificate, e.states)
            : io::json(nullptr);
  } else if (opt.mode == "fine" || opt.mode == "weakfine") {
    const BlockResult res = fine_dominate(e, x, opt.mode == "weakfine", opt.tol);
    verdict = res.verdict;
    note = res.note;
    rep.body["certificate"] = res.certificate
                                  ? io::blocking_certificate_json(*res.certificate)
                                  : io::json(nullptr);
  } else {
    throw UsageError("--mode: unknown mode '" + opt.mode + "'");
  }

  switch (verdict) {
    case BlockVerdict::Blocks: rep.body["verdict"] = "certificate"; break;
    case BlockVerdict::None: rep.body["verdict"] = "none-found(policy)"; break;
    case BlockVerdict::Indeterminate:
      rep.body["verdict"] = "indeterminate";
      break;
  }
  rep.body["note"] = note;
  rep.wall_time_ms = elapsed_ms(t0);
  emit_report(rep, opt);

  if (verdict == BlockVerdict::Blocks) return kExitCertificate;
  if (verdict == BlockVerdict::None) return kExitOk;
  return kExitIndeterminate;
}

int cmd_vind(const Options& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> measures = parse_epsilons(opt.epsilon_text);
  const io::EconomyFile f = io::load_economy_file(opt.file, opt.strict);
  const Economy& e = f.economy;
  const Allocation x = resolve_allocation(f, opt);
  std::string why;
  require_usable_allocation(e, x, opt.tol, true, &why);

  io::RunReport rep = base_run(
      "vind --tol " + dtos(opt.tol) + " --epsilon " + opt.epsilon_text, e, opt);
  rep.body["options"] =
      io::json{{"tol", opt.tol}, {"measures", measures}};
  rep.body["allocation"] = io::allocation_json(x);

  const CoreResult core = private_core_membership(e, x, opt.tol);
  if (core.verdict == BlockVerdict::None) {
    rep.body["verdict"] = "nothing to resize";
    rep.body["note"] = "no coalition blocks the allocation at this tolerance";
    rep.wall_time_ms = elapsed_ms(t0);
    emit_report(rep, opt);
    return kExitCertificate;
  }
  if (core.verdict == BlockVerdict::Indeterminate || !core.certificate) {
    rep.body["verdict"] = "indeterminate";
    rep.body["note"] = core.note;
    rep.wall_time_ms = elapsed_ms(t0);
    emit_report(rep, opt);
    return kExitIndeterminate;
  }

  const StepAllocation fx = to_continuum(x);
  const ContinuumBlockingCertificate lifted =
      to_continuum_certificate(e, *core.certificate);
  ContinuumBlockingCertificate shrunk;
  try {
    shrunk = lemma_shrink(e, lifted, fx);
  } catch (const std::exception& ex) {
    rep.body["verdict"] = "indeterminate";
    rep.body["note"] = std::string("shrink failed: ") + ex.what();
    rep.wall_time_ms = elapsed_ms(t0);
    emit_report(rep, opt);
    return kExitIndeterminate;
  }
  rep.body["base_certificate"] =
      io::blocking_certificate_json(*core.certificate);
  rep.body["shrunk_certificate"] = io::continuum_certificate_json(shrunk);

  bool all_valid = true;
  io::json rows = io::json::array();
  for (double m : measures) {
    io::json row = io::json::object();
    row["measure"] = m;
    try {
      const ResizeOutcome ro = vind_resize_to_measure(e, shrunk, fx, m);
      double mass = ro.certificate.profile.total();
      double mass_error = std::abs(mass - m);
      double worst_surplus = 0.0;
      for (std::size_t s = 0; s < ro.certificate.surplus.n_states(); ++s)
        for (std::size_t k = 0; k < ro.certificate.surplus.dim(); ++k)
          worst_surplus =
              std::min(worst_surplus, ro.certificate.surplus.at(s)[k]);
      double min_margin = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < ro.certificate.margins.size(); ++i)
        if (ro.certificate.profile.mass[i] > 0.0)
          min_margin = std::min(min_margin, ro.certificate.margins[i]);
      std::string vwhy;
      const bool ok =
          validate_continuum_certificate(e, fx, ro.certificate, 1e-9, &vwhy);
      row["parameter"] = ro.parameter;
      row["form"] = ro.note;
      row["mass"] = mass;
      row["mass_error"] = mass_error;
      row["worst_surplus"] = worst_surplus;
      row["min_margin"] = min_margin;
      row["valid"] = ok;
      if (!ok) row["why"] = vwhy;
      row["certificate"] = io::continuum_certificate_json(ro.certificate);
      if (!ok || mass_error > 1e-12) all_valid = false;
    } catch (const std::exception& ex) {
      row["valid"] = false;
      row["why"] = ex.what();
      all_valid = false;
    }
    rows.push_back(std::move(row));
  }
  rep.body["resizes"] = std::move(rows);
  rep.body["verdict"] = all_valid ? "resized" : "construction failed";
  rep.wall_time_ms = elapsed_ms(t0);
  emit_report(rep, opt);
  return all_valid ? kExitOk : kExitIndeterminate;
}

int cmd_verify(const Options& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const io::EconomyFile f = io::load_economy_file(opt.file, opt.strict);
  const Economy& e = f.economy;

  VerifyOptions vo;
  vo.tol = opt.tol;
  vo.seed = opt.seed;
  vo.policy = parse_policy(opt.policy_text);
  const std::vector<std::vector<double>> grid =
      parse_r_grid(opt.r_grid_text, e.n_agents());

  std::string echo = "verify --theorem " + opt.theorem + " --tol " +
                     dtos(opt.tol) + " --seed " + std::to_string(opt.seed);
  if (!opt.r_grid_text.empty()) echo += " --r-grid " + opt.r_grid_text;
  io::RunReport rep = base_run(echo, e, opt);

  TheoremReport tr;
  if (opt.theorem == "p2") {
    tr = check_proposition2(e, vo);
    rep.body["source"] = "solver";
  } else {
    Allocation x;
    if (!opt.allocation_path.empty()) {
      x = load_allocation_arg(opt.allocation_path);
      rep.body["source"] = "allocation file";
    } else if (f.allocation) {
      x = *f.allocation;
      rep.body["source"] = "embedded allocation";
    } else {
      NegishiOptions no;
      no.tol = opt.tol;
      const EquilibriumCertificate cert = solve_equilibrium(e, no);
      x = cert.allocation;
      rep.body["source"] = "solved allocation";
    }
    if (x.n_agents() != e.n_agents())
      throw UsageError("allocation: expected one plan per agent");
    rep.body["allocation"] = io::allocation_json(x);
    if (opt.theorem == "5")
      tr = check_theorem5(e, x, vo);
    else if (opt.theorem == "6")
      tr = check_theorem6(e, x, grid, vo);
    else if (opt.theorem == "7")
      tr = check_theorem7(e, x, grid, vo);
    else if (opt.theorem == "8")
      tr = check_theorem8(e, x, grid, vo);
    else if (opt.theorem == "c5")
      tr = check_corollary5(e, x, grid, vo);
    else
      throw UsageError("--theorem: expected one of 5, 6, 7, 8, c5, p2");
  }

  rep.body["report"] = io::theorem_report_json(tr);
  rep.wall_time_ms = elapsed_ms(t0);
  emit_report(rep, opt);

  switch (tr.verdict) {
    case SuiteVerdict::Confirmed: return kExitOk;
    case SuiteVerdict::CounterexampleCandidate: return kExitCertificate;
    case SuiteVerdict::Indeterminate: return kExitIndeterminate;
  }
  return kExitInternal;
}

int cmd_generate(const Options& opt, const GenSpec& spec) {
  Economy e;
  try {
    e = generate_economy(spec);
  } catch (const std::exception& ex) {
    std::cerr << "generate: " << ex.what() << "\n";
    return kExitUsage;
  }
  io::EconomyFile f;
  f.economy = std::move(e);
  const std::string bytes = io::serialize_economy_file(f);
  if (opt.out.empty())
    std::cout << bytes;
  else
    write_out_file(opt.out, bytes);
  return kExitOk;
}

int cmd_chart(const std::string& space, double p, bool p_given) {
  SpaceClassification c;
  try {
    SpaceDescriptor d;
    d.family = parse_space_family(space);
    if (p_given) d.p = p;
    c = classify_space(d);
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
  std::cout << format_classification(c) << "\n";
  return kExitOk;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"Finite asymmetric-information exchange economies: "
               "equilibria, cores, and theorem suites"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  Options opt;
  GenSpec gen;
  std::string chart_space;
  double chart_p = 0.0;

  auto add_shared = [&](CLI::App* sub, bool wants_file) {
    if (wants_file)
      sub->add_option("file", opt.file, "economy file")->required();
    sub->add_option("--tol", opt.tol, "verification tolerance");
    sub->add_option("--seed", opt.seed, "search seed");
    sub->add_option("--threads", opt.threads, "worker thread count")
        ->envname("RADNER_THREADS");
    sub->add_flag("--strict", opt.strict, "reject unknown file keys");
    sub->add_option("--out", opt.out, "also write the report here");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve and verify equilibrium");
  add_shared(solve, true);

  CLI::App* core = app.add_subcommand("core", "run a blocking oracle");
  add_shared(core, true);
  core->add_option("--allocation", opt.allocation_path, "allocation file");
  core->add_option("--mode", opt.mode,
                   "private | aubin | expost | fine | weakfine");
  core->add_option("--policy", opt.policy_text,
                   "aubin search policy, key=value comma list "
                   "(dyadic, refine, probes, near)");

  CLI::App* vind = app.add_subcommand(
      "vind", "resize a blocking coalition to requested measures");
  add_shared(vind, true);
  vind->add_option("--allocation", opt.allocation_path, "allocation file");
  vind->add_option("--epsilon", opt.epsilon_text, "comma list of measures")
      ->required();

  CLI::App* verify = app.add_subcommand("verify", "run a theorem suite");
  add_shared(verify, true);
  verify->add_option("--allocation", opt.allocation_path, "allocation file");
  verify->add_option("--theorem", opt.theorem, "5 | 6 | 7 | 8 | c5 | p2")
      ->required();
  verify->add_option("--policy", opt.policy_text,
                     "aubin search policy, key=value comma list");
  verify->add_option("--r-grid", opt.r_grid_text,
                     "perturbation points, semicolon-separated comma vectors");

  CLI::App* generate =
      app.add_subcommand("generate", "emit a seeded random economy file");
  generate->add_option("--seed", gen.seed, "generator seed");
  generate->add_option("--n", gen.n_agents, "agent count");
  generate->add_option("--l", gen.dim, "commodity dimension");
  generate->add_option("--states", gen.n_states, "state count");
  generate->add_option("--profile", gen.profile,
                       "strong | mixed | degenerate | complementary");
  generate->add_option("--out", opt.out, "write the file here");

  CLI::App* chart =
      app.add_subcommand("chart", "print a commodity-space classification row");
  chart->add_option("space", chart_space, "family name")->required();
  CLI::Option* p_opt = chart->add_option("--p", chart_p, "exponent for ell_p / L_p");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForVersion& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return kExitUsage;
  }

  if (!(opt.tol > 0.0)) throw UsageError("--tol must be positive");
  if (opt.threads < 1) throw UsageError("--threads must be at least 1");
  parallel::set_threads(opt.threads);

  if (solve->parsed()) return cmd_solve(opt);
  if (core->parsed()) return cmd_core(opt);
  if (vind->parsed()) return cmd_vind(opt);
  if (verify->parsed()) return cmd_verify(opt);
  if (generate->parsed()) return cmd_generate(opt, gen);
  if (chart->parsed())
    return cmd_chart(chart_space, chart_p, p_opt->count() > 0);
  return kExitUsage;
}

} // namespace

int run(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const io::ParseError& ex) {
    if (ex.line() > 0)
      std::cerr << "parse error at line " << ex.line() << ", column "
                << ex.column() << ": " << ex.what() << "\n";
    else
      std::cerr << "parse error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& ex) {
    std::cerr << "usage error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& ex) {
    std::cerr << "allocation error: " << ex.what() << "\n";
    return kExitBadAllocation;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "input error: " << ex.what() << "\n";
    return kExitBadAllocation;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitInternal;
  }
}

} // namespace radner::cli
