#pragma once

namespace ebkit::cli {

/// Dispatch a full command line.  Returns 0 on success, 2 on usage or input
/// validation failure, 3 on numerical failure (the module error name is
/// printed to stderr).
int run_cli(int argc, const char* const* argv);

}  // namespace ebkit::cli
