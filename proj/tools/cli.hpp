#pragma once

// Command-line front end. `run` takes the arguments after the program name
// and returns the process exit code.
//
// Exit codes: check returns 0..3 (NonOscillatory, FastDecaying, Persistent,
// Unstable); every command returns 64 for configuration errors, 70 when a
// numerical step fails, 74 on I/O failure.

#include <ostream>
#include <string>
#include <vector>

namespace oscillab::cli {

inline constexpr int kExitUsage = 64;
inline constexpr int kExitSoftware = 70;
inline constexpr int kExitIo = 74;

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oscillab::cli
