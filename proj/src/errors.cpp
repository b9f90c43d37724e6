#include "entcost/errors.hpp"

namespace entcost {

const char *error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Precondition: return "precondition";
        case ErrorKind::DegenerateSpectrum: return "degenerate-spectrum";
        case ErrorKind::UnboundedHamiltonian: return "unbounded-hamiltonian";
        case ErrorKind::GaplessHamiltonian: return "gapless-hamiltonian";
        case ErrorKind::DegenerateMode: return "degenerate-mode";
        case ErrorKind::NoPartner: return "no-partner";
        case ErrorKind::InvalidRestriction: return "invalid-restriction";
        case ErrorKind::InvalidSpectrum: return "invalid-spectrum";
        case ErrorKind::InvalidSqueezing: return "invalid-squeezing";
        case ErrorKind::NumericalInconsistency: return "numerical-inconsistency";
        case ErrorKind::Size: return "size";
        case ErrorKind::Convergence: return "convergence";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string &message)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

ConvergenceError::ConvergenceError(const std::string &message, double estimate)
    : Error(ErrorKind::Convergence, message), estimate_(estimate) {}

void fail(ErrorKind kind, const std::string &message) { throw Error(kind, message); }

}  // namespace entcost
