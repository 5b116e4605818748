#ifndef POCS_TOOLS_CLI_HPP
#define POCS_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace pocs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // runtime or data failure
inline constexpr int kExitUsage = 2;

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pocs::cli

#endif  // POCS_TOOLS_CLI_HPP
