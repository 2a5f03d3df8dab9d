#pragma once

#include <vector>

#include "stillife/be_solver.hpp"
#include "stillife/rows.hpp"

namespace stillife {

// Row domain restricted to vertically symmetric rows: values are half-rows
// (the middle column included once for odd n), expanded to full words.
inline RowKernel make_symmetric_kernel(int n) {
  int w = symmetric_width(n);
  std::vector<std::uint32_t> words(std::size_t(1) << w);
  for (std::size_t v = 0; v < words.size(); ++v)
    words[v] = expand_symmetric(static_cast<std::uint32_t>(v), n);
  return make_kernel_from_words(n, w, std::move(words));
}

// SSL(n): the best stable pattern among vertically symmetric ones — an
// upper bound on SL(n). Identical elimination, halved row domain.
inline SlSolveResult solve_ssl_be(int n, bool count_solutions = false) {
  if (n < 1 || n > 30) throw std::invalid_argument("side out of range");
  if (n == 1) {
    return {CostValue(1), Pattern(1),
            count_solutions ? std::optional(SolutionCount(1)) : std::nullopt};
  }
  return solve_rows_with_kernel(make_symmetric_kernel(n), count_solutions,
                                "raise STILLIFE_MEM_BUDGET");
}

}  // namespace stillife
