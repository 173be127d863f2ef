#pragma once

#include <map>
#include <string>

#include "catprob/workspace.hpp"

namespace catprob {

struct CommandResult {
  std::string output;
  int exit_code = 0;
};

/// Executes one command against a loaded workspace and captures its stdout
/// text. `flags` holds long-flag values with the dashes stripped ("--left U"
/// arrives as {"left", "U"}); value-less flags map to "".
///
/// Never throws: failures come back as "error[<code>]: <message>" with exit
/// code 2. Exit codes: 0 the command succeeded, 1 a law or check failed,
/// 2 parse/resolve/usage/invariant errors.
CommandResult run_command(const Workspace& ws, const std::string& command,
                          const std::map<std::string, std::string>& flags);

}  // namespace catprob
