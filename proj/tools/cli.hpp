#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperlab::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 1,
  kAcceptance = 2,
  kResource = 3,
};

/// Entry point shared by the executable and the tests. args[0] is the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperlab::cli
