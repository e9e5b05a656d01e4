#pragma once

#include <stdexcept>
#include <string>

namespace cfm {

/// Operands live in algebras (or spaces) of different dimension.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation at a pole, a zero vector, or another singular point.
class SingularPoint : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Element is not invertible in the Clifford group.
class NotInvertible : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Vahlen coefficients that do not act as a Moebius map on vectors.
class InvalidVahlen : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A point outside the admitted region of a chart or a field's domain.
class DomainViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Kernel requested on the diagonal x == y.
class DiagonalError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed configuration or description file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cfm
