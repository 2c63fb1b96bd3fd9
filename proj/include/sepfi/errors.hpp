#pragma once

#include <stdexcept>
#include <string>

namespace sepfi {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The basis expansion of the eigenvectors cannot be formed (lambda2 ~ 0).
class DegenerateDecomposition : public Error {
public:
    using Error::Error;
};

/// A quantity that must be nonnegative came out clearly negative.
class InternalConsistencyError : public Error {
public:
    using Error::Error;
};

class NonConvergence : public Error {
public:
    using Error::Error;
};

/// Numerical eigenbasis too close to degenerate for the finite-difference derivative.
class IllConditioned : public Error {
public:
    using Error::Error;
};

/// Monte Carlo summary refused (too few usable trials).
class SummaryRefused : public Error {
public:
    using Error::Error;
};

}  // namespace sepfi
