#pragma once

#include <stdexcept>
#include <string>

namespace wavelab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Parameters violate a theorem hypothesis (e.g. the upper bound on alpha).
class EligibilityError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Invalid run configuration; the message lists every violation found.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values encountered while evaluating a time integral.
class PropagationError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values produced by a Picard iterate.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, int iteration)
      : Error(what), iteration_(iteration) {}
  int iteration() const { return iteration_; }

 private:
  int iteration_;
};

}  // namespace wavelab
