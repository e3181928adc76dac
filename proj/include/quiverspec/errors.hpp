#pragma once

#include <stdexcept>
#include <string>

namespace quiverspec {

/// Malformed or inconsistent input data (CLI exit code 2).
class InputError : public std::runtime_error {
  public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// The requested computation does not fit the materialization budget
/// (CLI exit code 3). Carries the smallest budget that would suffice.
class BudgetError : public std::runtime_error {
  public:
    BudgetError(const std::string& what, unsigned long requiredBudget)
        : std::runtime_error(what + " (required budget " + std::to_string(requiredBudget) + ")"),
          requiredBudget_(requiredBudget) {}

    unsigned long required_budget() const { return requiredBudget_; }

  private:
    unsigned long requiredBudget_;
};

} // namespace quiverspec
