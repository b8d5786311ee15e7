// cli.hpp - command-line front end, callable in-process for tests.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace primewin {

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdictFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitCapacity = 4;
inline constexpr int kExitSink = 5;

// args excludes the program name. Reports go to `out` unless --output names
// a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace primewin
