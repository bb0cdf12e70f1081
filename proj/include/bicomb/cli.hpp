#pragma once

namespace bicomb {

// Command-line entry point; returns the process exit code:
// 0 everything passed, 1 a property check failed, 2 usage or input error.
int run_cli(int argc, const char* const* argv);

}  // namespace bicomb
