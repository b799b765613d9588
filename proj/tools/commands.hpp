#ifndef RADNER_CLI_COMMANDS_HPP
#define RADNER_CLI_COMMANDS_HPP

namespace radner::cli {

inline constexpr const char* kToolVersion = "radner 1.0.0";

/// Parse argv and run one subcommand. Returns the process exit code:
///   0  verified result / in core / constructions valid / file emitted
///   1  certificate found (or, for vind, nothing to resize)
///   2  quasi-equilibrium only
///   3  no certificate / indeterminate
///   64 usage or parse error
///   65 audit failure
///   66 unusable input allocation
int run(int argc, char** argv);

} // namespace radner::cli

#endif
