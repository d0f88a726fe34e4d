#include "eu/errors.hpp"

namespace eu {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidParam: return "InvalidParam";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::InvalidSplit: return "InvalidSplit";
        case ErrorCode::SplitOutOfRange: return "SplitOutOfRange";
        case ErrorCode::SigmaUnsupported: return "SigmaUnsupported";
        case ErrorCode::BranchViolation: return "BranchViolation";
        case ErrorCode::SingularPoint: return "SingularPoint";
        case ErrorCode::NegativeArgument: return "NegativeArgument";
        case ErrorCode::ZeroArgument: return "ZeroArgument";
        case ErrorCode::OrderViolation: return "OrderViolation";
        case ErrorCode::AssumptionViolated: return "AssumptionViolated";
        case ErrorCode::RegimeMismatch: return "RegimeMismatch";
        case ErrorCode::RootSelectionFailure: return "RootSelectionFailure";
        case ErrorCode::NewtonDivergence: return "NewtonDivergence";
        case ErrorCode::NonConvergence: return "NonConvergence";
        case ErrorCode::Degenerate: return "Degenerate";
    }
    return "Unknown";
}

bool is_parameter_error(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidParam:
        case ErrorCode::OutOfRange:
        case ErrorCode::InvalidSplit:
        case ErrorCode::SplitOutOfRange:
        case ErrorCode::SigmaUnsupported:
        case ErrorCode::NegativeArgument:
        case ErrorCode::ZeroArgument:
        case ErrorCode::OrderViolation:
        case ErrorCode::RegimeMismatch:
        case ErrorCode::AssumptionViolated:
            return true;
        default:
            return false;
    }
}

}  // namespace eu
