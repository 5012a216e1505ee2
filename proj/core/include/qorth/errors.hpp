#pragma once

#include <stdexcept>
#include <string>

namespace qorth {

/// Argument outside the domain of an operation (bad parameter, bad index).
class DomainError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed coefficient table or configuration input.
class IngestError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An iterative procedure did not stabilize within its size budget.
class ConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A certified remainder is too large for the requested tolerance.
class PrecisionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Two independent routes to the same quantity disagree.
class NumericalConsistencyError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace qorth
