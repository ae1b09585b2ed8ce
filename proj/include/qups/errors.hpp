#pragma once

#include <stdexcept>
#include <string>

namespace qups {

// Resource/budget exhaustion (enumeration box too large, point budget hit,
// convergent overflow, ...).  CLI maps this to exit code 3.
class budget_error : public std::runtime_error {
 public:
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid inputs (gcd != 1, zero denominator, dimension mismatch, ...) are
// reported as std::domain_error; int64 overflow in exact arithmetic as
// std::overflow_error.

}  // namespace qups
