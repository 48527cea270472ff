#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace icz {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFault = 2;

/// Runs one subcommand. `args` excludes the program name. Reports go to
/// `out`, diagnostics to `err`. Returns 0, 1 (usage/parse/math error) or 2
/// (monitor found a suspected stator fault).
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace icz
