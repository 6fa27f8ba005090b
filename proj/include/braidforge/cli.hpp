#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace braidforge {

inline constexpr int kExitOk = 0;  // Found, replay ok, or a finished run
inline constexpr int kExitNotAdmitted = 1;  // also a failed replay
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitBadInput = 65;  // unreadable document contents
inline constexpr int kExitIo = 74;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace braidforge
