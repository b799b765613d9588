#ifndef RADNER_IO_HPP
#define RADNER_IO_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "radner/blocking.hpp"
#include "radner/continuum.hpp"
#include "radner/economy.hpp"
#include "radner/equilibrium.hpp"
#include "radner/verifier.hpp"

// The "radner/1" container format and report serialization. Files are JSON
// with a fixed key order and shortest round-trip numbers, so serializing a
// parsed file reproduces it byte for byte and content digests are stable
// identifiers.

namespace radner::io {

using json = nlohmann::ordered_json;

/// Malformed input. line/column are 1-based when known and 0 for semantic
/// errors discovered after syntactic parsing.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : std::runtime_error(msg), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct EconomyFile {
  Economy economy;
  std::optional<Allocation> allocation;
  std::optional<PriceSystem> prices;
};

/// Parse the container format. Under strict, unknown keys are rejected.
/// Throws ParseError on both syntactic and semantic problems.
EconomyFile parse_economy_file(const std::string& text, bool strict);
/// Read the file at path and parse it; file-system errors also surface as
/// ParseError (line 0).
EconomyFile load_economy_file(const std::string& path, bool strict);

/// Canonical serialization: fixed key order, two-space indent, trailing
/// newline. parse(serialize(f)) == f, and serialize(parse(t)) is the
/// canonical form of t.
std::string serialize_economy_file(const EconomyFile& f);

/// Hex SHA-256 of the canonical serialization of the economy alone, with
/// embedded allocation and prices stripped, so the instance identity does
/// not change when results are attached.
std::string economy_digest(const Economy& e);
std::string sha256_hex(const std::string& bytes);

// Report payload builders.
json allocation_json(const Allocation& x);
json prices_json(const PriceSystem& p);
json equilibrium_report_json(const EquilibriumReport& r);
json equilibrium_certificate_json(const EquilibriumCertificate& c);
json blocking_certificate_json(const BlockingCertificate& c);
json ex_post_certificate_json(const ExPostCertificate& c, const StateSpace& states);
json continuum_certificate_json(const ContinuumBlockingCertificate& c);
json theorem_report_json(const TheoremReport& r);

// Re-hydrators, so certificates re-validate from serialized form alone.
Allocation parse_allocation(const json& j);
PriceSystem parse_prices(const json& j);
BlockingCertificate parse_blocking_certificate(const json& j);

/// One command invocation's output. wall_time_ms is display-only: the
/// serialized bytes never include it (or the thread count), so a report is
/// a pure function of (input digest, seed, flags).
struct RunReport {
  std::string command;
  std::string digest;
  std::string version;
  std::uint64_t seed = 0;
  json body;
  double wall_time_ms = 0.0;
};

std::string serialize_run_report(const RunReport& r);

} // namespace radner::io

#endif
