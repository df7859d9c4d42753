#pragma once

#include <stdexcept>
#include <string>

namespace sbparity {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of a function (e.g. J(omega) at omega = 0).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A basis or matrix would exceed a configured size limit.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// A truncated computation could not certify its own accuracy.
class AccuracyError : public Error {
public:
    using Error::Error;
};

/// The iterative eigensolver ran out of iterations.
class SolverError : public Error {
public:
    SolverError(const std::string& what, double best_residual)
        : Error(what), best_residual_(best_residual) {}

    double best_residual() const noexcept { return best_residual_; }

private:
    double best_residual_;
};

/// Parity-sector decomposition requested for a Hamiltonian with a local field.
class UnsupportedDecomposition : public Error {
public:
    using Error::Error;
};

/// The dense ground state is numerically degenerate.
class DegenerateGroundError : public Error {
public:
    using Error::Error;
};

}  // namespace sbparity
