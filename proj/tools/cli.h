// Copyright (c) 2026 The txpack developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef TXPACK_TOOLS_CLI_H
#define TXPACK_TOOLS_CLI_H

#include <ostream>
#include <string>
#include <vector>

namespace txpack::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_validation = 1,
    exit_usage = 2,
    exit_invariant = 3,
};

/// Runs one CLI invocation. `args` excludes the program name. Results go
/// to `out` (or to --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace txpack::cli

#endif // TXPACK_TOOLS_CLI_H
