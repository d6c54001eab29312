#pragma once

#include <stdexcept>
#include <string>

namespace powerspec {

// Base of every error raised by the library. The CLI maps VerificationError
// to exit status 1 and every other Error to exit status 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Field or enumeration exceeds the configured cap or budget.
class SizeError : public Error {
 public:
  using Error::Error;
};

// Malformed parameters (non-prime p, non-primitive modulus, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Operation undefined for the argument (inverse of zero, log of zero).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Inputs outside the hypotheses of a closed form.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Curve parameters that none of the five point-count branches covers.
class UncoveredCaseError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// A computed quantity disagrees with an independent route or a closed form.
class VerificationError : public Error {
 public:
  using Error::Error;
};

// An exponential sum whose non-zero trace classes are not equidistributed,
// i.e. the sum is not a rational integer.
class IrrationalSumError : public VerificationError {
 public:
  using VerificationError::VerificationError;
};

}  // namespace powerspec
