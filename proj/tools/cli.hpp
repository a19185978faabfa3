#pragma once

#include <string>
#include <vector>

namespace leaguestat::cli {

/// Entry point behind the `leaguestat` binary.
/// Exit codes: 0 success, 1 usage error, 2 data validation error,
/// 3 numerical failure.
int run(int argc, char** argv);

/// Same, for in-process callers (tests); args exclude the program name.
int run(const std::vector<std::string>& args);

}  // namespace leaguestat::cli
