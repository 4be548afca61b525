#pragma once

#include <ostream>

namespace storagegame::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 2,
  kParseFailure = 3,
  kValidationFailure = 4,
  kExistenceFailure = 5,
  kNumericFailure = 6,
  kIoFailure = 7,
};

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace storagegame::cli
