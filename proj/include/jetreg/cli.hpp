#pragma once

// Command-line front end: `jetreg distance | solve-bvp | sweep | check`.

#include <iosfwd>
#include <string>

#include "jetreg/curves.hpp"

namespace jetreg::cli {

/// Process exit codes.
enum Exit : int {
  kOk = 0,
  kBadInput = 1,
  kSolverFailure = 2,
  kPropertyFailure = 3,
};

/// A curve given on the command line: inline JSON (first non-blank character
/// '{') or a path to a .json / .csv file.
Curve parse_curve_spec(const std::string& spec);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace jetreg::cli
