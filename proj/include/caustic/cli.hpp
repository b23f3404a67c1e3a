#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace caustic::cli {

enum ExitCode : int {
  kSuccess = 0,
  kSelftestFailure = 1,
  kValidationError = 2,
  kNumericalFailure = 3,
};

/// 17 significant digits, scientific, lowercase e; "nan" / "inf" / "-inf".
std::string format_number(double v);

/// Entry point shared by the executable and the tests. `args` excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace caustic::cli
