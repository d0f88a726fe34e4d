#pragma once

#include <stdexcept>
#include <string>

namespace eu {

enum class ErrorCode {
    InvalidParam,
    OutOfRange,
    InvalidSplit,
    SplitOutOfRange,
    SigmaUnsupported,
    BranchViolation,
    SingularPoint,
    NegativeArgument,
    ZeroArgument,
    OrderViolation,
    AssumptionViolated,
    RegimeMismatch,
    RootSelectionFailure,
    NewtonDivergence,
    NonConvergence,
    Degenerate,
};

const char* to_string(ErrorCode code);

// Parameter errors map to CLI exit code 1, numerical failures to 2.
bool is_parameter_error(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace eu
