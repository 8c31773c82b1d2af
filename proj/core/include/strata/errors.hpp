#pragma once

#include <stdexcept>
#include <string>

namespace strata {

/// An argument lies outside the documented domain of an operation.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Checked integer arithmetic left the representable range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// A mathematical invariant the library relies on failed to hold. Seeing one
/// of these is a bug signal, not a user error.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace checked {

inline long long add(long long a, long long b) {
  long long out;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("integer overflow in addition");
  return out;
}

inline long long sub(long long a, long long b) {
  long long out;
  if (__builtin_sub_overflow(a, b, &out)) throw OverflowError("integer overflow in subtraction");
  return out;
}

inline long long mul(long long a, long long b) {
  long long out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("integer overflow in multiplication");
  return out;
}

}  // namespace checked

}  // namespace strata
