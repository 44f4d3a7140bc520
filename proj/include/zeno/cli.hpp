#pragma once

#include <iosfwd>

namespace zeno::cli {

enum ExitCode : int {
    kOk = 0,
    kValidationFailed = 1,
    kBadArguments = 2,
    kBoundaryLimited = 3,
    kNoClosedForm = 4,
    kIoError = 5,
};

// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace zeno::cli
