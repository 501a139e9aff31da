#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace recq::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Runs one subcommand. `args` excludes the program name. Reports go to
/// `out` (or the --out file), diagnostics to `err`.
/// Exit codes: 0 success, 1 domain/regime error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace recq::cli
