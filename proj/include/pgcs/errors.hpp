#ifndef PGCS_ERRORS_HPP
#define PGCS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pgcs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input data: bad shapes, non-finite entries, schema violations.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Operand shapes do not conform.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// The coupled system matrix is numerically singular (no unique solution).
class SingularSystemError : public Error {
 public:
  using Error::Error;
};

// A full-row-rank operator turned out rank deficient numerically.
class RankDeficientError : public Error {
 public:
  using Error::Error;
};

// A dense construction was requested above the configured size cap.
class SizeCapError : public Error {
 public:
  using Error::Error;
};

// Direction resampling failed to produce an orthonormal set.
class DegenerateDirectionsError : public Error {
 public:
  using Error::Error;
};

}  // namespace pgcs

#endif
