#pragma once

#include <stdexcept>
#include <string>

namespace sendovlab {

enum class ErrorKind {
    BadInput,
    DegreeTooLow,
    NonConvergence,
    NotAZero,
    RootOutsideDisk,
    BranchPointSingularity,
    PathNearBranchPoint,
    StartNotCritical,
    SheetCollision,
    DegenerateConfiguration,
    ProjectionSingular,
    SingularEvaluation,
    QuadratureNotConverged,
    LoopNotClosed,
};

const char* error_kind_name(ErrorKind kind);

/// Thrown by every operation that can fail numerically.  The kind is stable
/// API; the message is for humans.
class NumericalError : public std::runtime_error {
public:
    NumericalError(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw NumericalError(kind, message);
}

} // namespace sendovlab
