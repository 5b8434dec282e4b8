#pragma once

#include <stdexcept>
#include <string>

namespace blocknorm {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

// Shape mismatch: non-square input, partition/ambient disagreement, etc.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Structurally valid input with an out-of-range or contradictory value.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Input failed a Hermitian-symmetry gate.
class NotHermitianError : public Error {
 public:
  using Error::Error;
};

// Input failed a unitarity gate (w* w != I beyond tolerance).
class NotUnitaryError : public Error {
 public:
  using Error::Error;
};

// An operation that requires a positive semidefinite input was handed
// something with an eigenvalue below -tolerance.
class NotPsdError : public Error {
 public:
  NotPsdError(const std::string& message, double min_eigenvalue)
      : Error(message), min_eigenvalue(min_eigenvalue) {}

  double min_eigenvalue = 0.0;
};

// A mathematically guaranteed identity failed numerically.  `stage` names
// the pipeline step whose invariant broke (e.g. "polar23", "assemble").
class ConsistencyError : public Error {
 public:
  ConsistencyError(const std::string& stage, const std::string& message)
      : Error(stage + ": " + message), stage(stage) {}

  std::string stage;
};

// A bounded randomized search exhausted its trial budget.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

// Malformed input text (matrix files, norm specs).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace blocknorm
