#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace zeno {

// Base for every failure raised by the library. Callers that only care about
// "something went wrong numerically" can catch this one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define ZENO_DEFINE_ERROR(Name)                                                \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {}   \
    }

ZENO_DEFINE_ERROR(DomainError);
ZENO_DEFINE_ERROR(NoSpectralDensity);
ZENO_DEFINE_ERROR(NoClosedForm);
ZENO_DEFINE_ERROR(NoQuadraticRegime);
ZENO_DEFINE_ERROR(ToleranceNotMet);
ZENO_DEFINE_ERROR(NoSignChange);
ZENO_DEFINE_ERROR(MaxIterations);
ZENO_DEFINE_ERROR(DegenerateSignal);
ZENO_DEFINE_ERROR(NoFiniteOptimum);
ZENO_DEFINE_ERROR(GridTooCoarse);
ZENO_DEFINE_ERROR(NonConvergence);

#undef ZENO_DEFINE_ERROR

// Short scientific rendering for error messages.
inline std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

} // namespace zeno
