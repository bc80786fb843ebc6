#pragma once

#include <stdexcept>
#include <string>

namespace spintomo {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand sizes disagree (matrix dimension vs. spin, frame vs. state, ...).
class dimension_mismatch : public error {
 public:
  using error::error;
};

/// Input violates a documented invariant (non-Hermitian state, bad spin, ...).
class invalid_argument : public error {
 public:
  using error::error;
};

/// A numerical routine was asked for something it cannot deliver accurately.
class numerical_error : public error {
 public:
  using error::error;
};

}  // namespace spintomo
