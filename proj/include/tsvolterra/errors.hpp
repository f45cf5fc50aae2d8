#pragma once

#include <stdexcept>
#include <string>

namespace tsv {

// Outcome classes; the CLI maps these onto process exit codes.
enum class ErrorCode {
    PointNotInTimeScale,
    InvalidStep,
    InvalidTimeScale,
    ParseError,
    UnknownIdentifier,
    UnboundVariable,
    DomainError,
    NumericOverflow,
    PointNotOnGrid,
    NonRegressive,
    GridMismatch,
    NoConvergence,
    SingularDiagonal,
    NotRightScattered,
    NonPositiveOmega,
    HypothesisViolated,
    ConditionFailed,
    IoError,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

const char* error_code_name(ErrorCode code);

} // namespace tsv
