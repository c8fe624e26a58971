#ifndef CRL_TOOLS_COMMANDS_HPP
#define CRL_TOOLS_COMMANDS_HPP

#include <string>
#include <vector>

namespace crl::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 2, kDataError = 3, kSearchError = 4 };

/// Entry point of the `crl` tool. Returns the process exit code.
int run(int argc, char** argv);
/// Same, with argv[0] omitted.
int run(const std::vector<std::string>& args);

}  // namespace crl::cli

#endif  // CRL_TOOLS_COMMANDS_HPP
