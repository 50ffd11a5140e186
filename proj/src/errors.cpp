#include "sendovlab/errors.hpp"

namespace sendovlab {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::BadInput: return "BadInput";
    case ErrorKind::DegreeTooLow: return "DegreeTooLow";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::NotAZero: return "NotAZero";
    case ErrorKind::RootOutsideDisk: return "RootOutsideDisk";
    case ErrorKind::BranchPointSingularity: return "BranchPointSingularity";
    case ErrorKind::PathNearBranchPoint: return "PathNearBranchPoint";
    case ErrorKind::StartNotCritical: return "StartNotCritical";
    case ErrorKind::SheetCollision: return "SheetCollision";
    case ErrorKind::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorKind::ProjectionSingular: return "ProjectionSingular";
    case ErrorKind::SingularEvaluation: return "SingularEvaluation";
    case ErrorKind::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorKind::LoopNotClosed: return "LoopNotClosed";
    }
    return "UnknownError";
}

} // namespace sendovlab
