#pragma once

namespace fpl::cli {

// Entry point for the command-line front end (subcommands: kernels,
// edgeworth, simulate, table1, diagnose). Returns the process exit code:
// 0 success, 2 validation failure, 3 numeric domain error, 4 capacity guard.
int run(int argc, const char* const* argv);

}  // namespace fpl::cli
