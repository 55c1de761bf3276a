#pragma once

#include <stdexcept>
#include <string>

namespace threefold {

// Root of every error the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Out-of-range or inconsistent numeric/structural parameters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Input data that violates a type invariant (non-Lie-algebra field, non-unitary loop, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A defining 1-form vanishes (or nearly so) somewhere on the grid.
class SingularityError : public Error {
 public:
  using Error::Error;
};

// No CW fixture or leafwise model exists for the requested input.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// An irreducible class has nonvanishing twisted first cohomology.
class RegularityError : public Error {
 public:
  using Error::Error;
};

// Representation moduli not finite; sums over classes are undefined.
class ModuliError : public Error {
 public:
  using Error::Error;
};

// A product or evaluation would exceed the degree bound a cochain was built for.
class HeadroomError : public Error {
 public:
  using Error::Error;
};

// A foliation failed the tautness test while strict checking was requested.
class TautnessError : public Error {
 public:
  using Error::Error;
};

// Cache directory or entry could not be read or written.
class CacheError : public Error {
 public:
  using Error::Error;
};

// Leafwise differential applied to a form of top degree.
class DegreeError : public Error {
 public:
  using Error::Error;
};

}  // namespace threefold
