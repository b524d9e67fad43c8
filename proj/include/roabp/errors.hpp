#pragma once

#include <stdexcept>

#include "roabp/field.hpp"   // FieldTooSmall
#include "roabp/matrix.hpp"  // DimensionMismatch

namespace roabp {

/// A brute-force enumeration would exceed its configured size budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The recursive sum test would build layers beyond the configured cap.
class RecursionBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its documented domain.
class PreconditionViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace roabp
