#pragma once

#include <stdexcept>
#include <string>

namespace kreinshift {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A constructor or operation precondition does not hold.
class InvariantViolation : public Error {
public:
  using Error::Error;
};

/// Argument lies outside the mathematical domain of the function.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Matrix is singular (or too close to singular) for the requested inverse.
class SingularMatrix : public Error {
public:
  using Error::Error;
};

/// Power series cannot be summed to the requested accuracy.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

/// Spectral radius too close to 1 for a strict-contraction code path.
class SpectralRadiusError : public Error {
public:
  using Error::Error;
};

/// Two grid-sampled objects do not share dimension or grid size.
class GridMismatch : public Error {
public:
  using Error::Error;
};

/// Requested truncation order is not resolvable on the given grid.
class GridTooCoarse : public Error {
public:
  using Error::Error;
};

/// Polynomial degree exceeds the stored coefficient truncation.
class DegreeExceedsTruncation : public Error {
public:
  using Error::Error;
};

/// -1 is (numerically) in the spectrum, so the Cayley inverse is undefined.
class CayleySingular : public Error {
public:
  using Error::Error;
};

/// Resolvent check point lies too close to the real axis.
class LambdaTooCloseToAxis : public Error {
public:
  using Error::Error;
};

/// Malformed input text or JSON.
class ParseError : public Error {
public:
  using Error::Error;
};

/// Filesystem failure while reading or writing artifacts.
class IoError : public Error {
public:
  using Error::Error;
};

} // namespace kreinshift
