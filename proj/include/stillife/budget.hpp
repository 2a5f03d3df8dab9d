#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace stillife {

// Thrown when a solver's planned allocations exceed the memory budget.
// Carries a human-readable account of the plan and a way out.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t planned, std::uint64_t budget,
                 const std::string& suggestion)
      : std::runtime_error("planned tables need " + std::to_string(planned) +
                           " bytes but the memory budget is " +
                           std::to_string(budget) + " bytes; " + suggestion),
        planned_(planned),
        budget_(budget) {}

  std::uint64_t planned() const { return planned_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t planned_;
  std::uint64_t budget_;
};

// Budget in bytes: STILLIFE_MEM_BUDGET (decimal bytes) or 2 GiB by default.
inline std::uint64_t memory_budget() {
  if (const char* s = std::getenv("STILLIFE_MEM_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 2ull << 30;
}

inline void check_budget(std::uint64_t planned_bytes,
                         const std::string& suggestion) {
  std::uint64_t budget = memory_budget();
  if (planned_bytes > budget)
    throw BudgetExceeded(planned_bytes, budget, suggestion);
}

}  // namespace stillife
