#pragma once

#include <stdexcept>
#include <string>

namespace brody {

// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on the arguments did not hold.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Floating-point relation detection could not separate a relation from
// noise at the configured precision.
class PrecisionInsufficient : public Error {
 public:
  using Error::Error;
};

class NoRoot : public Error {
 public:
  using Error::Error;
};

// The lift through the blow-up chart is undefined (the curve meets the center).
class LiftUndefined : public Error {
 public:
  using Error::Error;
};

class CapacityExceeded : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

class HypothesisViolated : public Error {
 public:
  HypothesisViolated(int condition, const std::string& what)
      : Error(what), condition_(condition) {}
  int condition() const { return condition_; }

 private:
  int condition_;
};

class SearchBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class InternalInvariant : public Error {
 public:
  using Error::Error;
};

}  // namespace brody
