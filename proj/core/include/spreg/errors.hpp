#pragma once

#include <stdexcept>
#include <string>

namespace spreg {

/// Vector/operator dimensions do not match.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative solve produced non-finite values.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested combination (e.g. p < 1 on a non-diagonal operator) has no
/// supported algorithm.
class UnsupportedCaseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A column restriction of an operator is rank deficient.
class FbiViolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The auxiliary scalar map is multivalued at the requested point.
class MultivaluedPointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A hard experiment assertion (error bound, monotonicity, cross-check)
/// failed; carries the offending record in the message.
class BoundViolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The finite net has no alternative column within the feasibility radius.
class NetTooCoarseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spreg
