#pragma once

// Command-line front end. Every subcommand prints one JSON document (or CSV
// with a header row) and returns
//   0  all checks passed
//   1  a verification failed
//   2  usage or configuration error
// A JSON file given with --config supplies defaults: top-level keys apply to
// every subcommand, an object under a subcommand's name applies to that one;
// flags on the command line win.

#include <iosfwd>
#include <string>
#include <vector>

namespace neqcft::cli {

inline constexpr int exit_pass = 0;
inline constexpr int exit_failed = 1;
inline constexpr int exit_usage = 2;

/// Arguments without the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

const std::vector<std::string>& subcommands();

}  // namespace neqcft::cli
