#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qlink::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsageError = 2;

/// Runs one CLI invocation. `args` excludes the program name. Results go to `out`,
/// diagnostics to `err`. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Expands `--preset <path>` into flags read from key=value lines, placed after the
/// subcommand and before the user's own flags so that explicit flags win.
std::vector<std::string> expand_presets(const std::vector<std::string>& args);

/// Grid start + i*step kept while strictly below stop + step/2.
std::vector<double> parse_sweep(const std::string& spec);

}  // namespace qlink::cli
