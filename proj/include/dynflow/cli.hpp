#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dynflow {

// Exit codes: 0 ok, 1 verification failed, 2 usage or parse error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dynflow
