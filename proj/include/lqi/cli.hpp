#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "lqi/types.hpp"

namespace lqi::cli {

enum ExitCode : int {
  kOk = 0,
  kParseError = 1,
  kInferenceFailure = 2,
  kSolverError = 3,
  kCapExceeded = 4,
  kIoError = 5,
};

/// Runs the driver on `args` (without the program name). Results go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Quantified variables renamed 'a, 'b, ... in order of first occurrence.
Scheme tidy(const Scheme& s);

}  // namespace lqi::cli
