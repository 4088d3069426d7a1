#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hg {

// Dispatches the hgreedy subcommands. Machine-readable payloads go to `out`,
// diagnostics to `err`. Returns the process exit code: 0 success, 2 bad
// usage/parameters, 3 computation failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            std::istream& in);

} // namespace hg
