#pragma once

#include <stdexcept>
#include <string>

namespace chebpert {

/// Precondition violated by the caller (bad size, point outside the domain, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A sampled function produced a non-finite value.
class NumericDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A truncated representation did not meet its resolution criterion.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Discretized inner products lost too many digits to cancellation.
class PrecisionLossError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation requested outside the region where the quadrature is trusted.
class AccuracyDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Too few usable samples for a regression.
class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed weight string, config file or command-line value.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace chebpert
