#pragma once

#include <stdexcept>
#include <string>

namespace entcost {

enum class ErrorKind {
    Precondition,
    DegenerateSpectrum,
    UnboundedHamiltonian,
    GaplessHamiltonian,
    DegenerateMode,
    NoPartner,
    InvalidRestriction,
    InvalidSpectrum,
    InvalidSqueezing,
    NumericalInconsistency,
    Size,
    Convergence,
};

const char *error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &message);
    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

// Thrown by the truncated Fock-space oracles when the cutoff is too small.
class ConvergenceError : public Error {
  public:
    ConvergenceError(const std::string &message, double estimate);
    double estimate() const noexcept { return estimate_; }

  private:
    double estimate_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string &message);

}  // namespace entcost
