#pragma once

#include <iosfwd>

namespace mbfm::cli {

constexpr int kOk = 0;
constexpr int kValidationErrors = 1;
constexpr int kIoOrParse = 2;
constexpr int kBadArguments = 3;

// Parses argv, runs one subcommand (validate, enumerate, analyze, render,
// simulate), and returns the process exit code (the constants above).
// Diagnostics go to `err` one per line as `LEVEL rule-code id message`;
// `out` carries help text. Exposed as a function so tests drive the CLI
// in-process.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace mbfm::cli
