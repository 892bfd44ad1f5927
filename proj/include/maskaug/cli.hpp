#pragma once

#include <iosfwd>

namespace maskaug::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Entry point for the `maskaug` tool. Subcommands: synth, mask, augment,
/// train, eval, report. Returns 0 on success, 1 on usage errors, 2 on data
/// errors; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace maskaug::cli
