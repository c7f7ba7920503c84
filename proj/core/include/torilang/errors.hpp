#pragma once

#include <stdexcept>
#include <string>

namespace torilang {

/// Raised when an algebraic structure violates one of its invariants.
/// `violation()` is a short stable name (e.g. "wild-inertia-order") that
/// reports and tests can match on.
class AlgebraError : public std::runtime_error {
public:
  AlgebraError(std::string violation, const std::string& detail)
      : std::runtime_error(violation + ": " + detail), violation_(std::move(violation)) {}

  const std::string& violation() const noexcept { return violation_; }

private:
  std::string violation_;
};

} // namespace torilang
