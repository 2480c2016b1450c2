#pragma once

#include <stdexcept>
#include <string>

namespace ddc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input data (malformed files, invariant violations in parsed series).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Valid data that a statistic or estimator cannot be computed from
// (too few points, zero variance, empty tail, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace ddc
