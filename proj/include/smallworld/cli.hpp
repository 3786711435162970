#ifndef SMALLWORLD_CLI_HPP
#define SMALLWORLD_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace smallworld {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs one CLI invocation. args[0] is the program name. JSON reports go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smallworld

#endif  // SMALLWORLD_CLI_HPP
