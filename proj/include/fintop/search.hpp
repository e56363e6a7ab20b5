#pragma once

#include <cstdint>
#include <stdexcept>

namespace fintop {

// Thrown when a backtracking search exceeds its node budget. Catching this
// means "inconclusive", never a negative answer.
struct budget_exhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Node counter shared by the isomorphism and trivialization searches.
struct SearchBudget {
  std::uint64_t limit = 10'000'000;
  std::uint64_t used = 0;

  void charge(std::uint64_t k = 1) {
    used += k;
    if (used > limit) throw budget_exhausted("search budget exhausted");
  }
};

}  // namespace fintop
