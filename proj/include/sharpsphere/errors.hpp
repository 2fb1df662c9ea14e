#pragma once

#include <stdexcept>
#include <string>

namespace sharpsphere {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The input is (numerically) constant where a non-constant function is needed.
class ConstantInput : public Error {
 public:
  using Error::Error;
};

// A function that must be uniformly positive is not.
class PositivityError : public Error {
 public:
  using Error::Error;
};

// Requested polynomial degree exceeds what the quadrature resolves.
class DegreeOverflow : public Error {
 public:
  using Error::Error;
};

// Objects built on different quadrature rules were combined.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Initial datum lacks the required x -> -x symmetry.
class SymmetryError : public Error {
 public:
  using Error::Error;
};

// The time stepper lost positivity or resolution.
class StepSizeError : public Error {
 public:
  using Error::Error;
};

// A fitting window contains too few samples.
class EmptyWindow : public Error {
 public:
  using Error::Error;
};

}  // namespace sharpsphere
