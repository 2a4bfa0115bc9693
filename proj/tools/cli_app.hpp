#pragma once

namespace uvprop::cli {

/// Parses argv, runs the selected subcommand, returns the process exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace uvprop::cli
