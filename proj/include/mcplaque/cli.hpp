#pragma once

namespace mcplaque {

// Full command-line driver (subcommands: profile, cir analytic, venturi,
// waveform, simulate).  Returns the process exit code: 0 success, 1 usage,
// 2 config/validation error, 3 runtime failure.
int run_cli(int argc, const char* const* argv);

}  // namespace mcplaque
