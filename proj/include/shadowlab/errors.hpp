#pragma once

#include <stdexcept>
#include <string>

namespace shadowlab {

/// Malformed input: bad JSON, bad rational literal, mismatched dimensions.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that parses but violates a structural requirement (matrix shape,
/// index range, surjectivity flag).
class StructuralError : public InputError {
 public:
  using InputError::InputError;
};

/// Operation invoked outside its mathematical domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured size cap or combinatorial budget was exceeded.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A certificate failed re-validation.
class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace shadowlab
