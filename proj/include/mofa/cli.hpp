#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mofa {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitUsage = 2 };

/// Runs one `mofa` command line. `args` excludes the program name.
/// Subcommands: compress, segment, eval, synth, posenc, inspect.
/// Returns 0 on success, 1 on a validation or I/O error, 2 on a usage error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mofa
