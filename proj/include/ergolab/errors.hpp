#pragma once

#include <stdexcept>
#include <string>

namespace ergolab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// a checked identity that must hold came out false
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace ergolab
