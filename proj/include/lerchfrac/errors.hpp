#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace lerchfrac {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated. The message names it.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Argument within the pole-proximity radius of a gamma pole.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Complex power or logarithm requested on the cut (-inf, 0].
class BranchCutError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A numerical procedure could not reach its target accuracy.
/// Carries the best value found so the caller can still inspect it.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::complex<double> best = {}, double err = 0.0)
        : Error(what), best_value(best), best_error(err) {}

    std::complex<double> best_value;
    double best_error;
};

class ToleranceNotMet : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
};

class DivergenceSuspected : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
};

class NonconvergenceError : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
};

class ExtrapolationUnstable : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
};

}  // namespace lerchfrac
