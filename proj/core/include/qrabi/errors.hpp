#pragma once

#include <stdexcept>
#include <string>

namespace qrabi {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// An input violates a documented precondition (e.g. non-Hermitian matrix handed
// to a Hermitian routine, density matrix with trace != 1).
class ContractViolation : public Error {
public:
    using Error::Error;
};

class InvalidParams : public Error {
public:
    using Error::Error;
};

// Schrieffer-Wolff generator is undefined when a transition is resonant with the mode.
class ResonanceError : public Error {
public:
    using Error::Error;
};

class SingularDenominator : public Error {
public:
    using Error::Error;
};

class UnsupportedRegime : public Error {
public:
    using Error::Error;
};

class DegenerateBranch : public Error {
public:
    using Error::Error;
};

}  // namespace qrabi
