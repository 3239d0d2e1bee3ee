#pragma once

// Command-line front end.  run() is the whole program minus process setup,
// so tests can drive it with in-memory streams.

#include <iosfwd>
#include <string>
#include <vector>

namespace sepkit::cli {

  // Exit codes.
  inline constexpr int ok             = 0;
  inline constexpr int argument_error = 1;  // bad precondition or usage
  inline constexpr int format_error   = 2;  // malformed input file or table
  inline constexpr int resource_error = 3;  // a size cap was hit
  inline constexpr int internal_error = 4;  // an invariant failed (a bug)

  // args excludes the program name.
  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace sepkit::cli
