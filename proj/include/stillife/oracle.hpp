#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "stillife/cost.hpp"
#include "stillife/life.hpp"
#include "stillife/wcsp.hpp"

namespace stillife::oracle {

// Reference row cost: straightforward per-cell loops, no bit-parallel
// tricks, kept deliberately independent of the kernels in rows.hpp.
inline CostValue row_cost_ref(int i, std::uint32_t prev, std::uint32_t cur,
                              std::uint32_t next, int n) {
  if (i == 1) prev = 0;
  if (i == n) next = 0;
  auto bit = [](std::uint32_t w, int j) -> int { return (w >> (j - 1)) & 1; };
  std::uint64_t dead = 0;
  for (int j = 1; j <= n; ++j) {
    int cnt = 0;
    for (int dj = -1; dj <= 1; ++dj) {
      if (j + dj < 1 || j + dj > n) continue;
      cnt += bit(prev, j + dj) + bit(next, j + dj);
      if (dj != 0) cnt += bit(cur, j + dj);
    }
    if (bit(cur, j)) {
      if (cnt != 2 && cnt != 3) return CostValue::top();
      if ((i == 1 || i == n) && j > 1 && j < n && bit(cur, j - 1) && bit(cur, j + 1))
        return CostValue::top();
      if ((j == 1 || j == n) && bit(prev, j) && bit(next, j))
        return CostValue::top();
    } else {
      if (cnt == 3) return CostValue::top();
      ++dead;
    }
  }
  return CostValue(dead);
}

struct SlBruteResult {
  CostValue optimum;
  SolutionCount count;
  Pattern best;  // first optimum in enumeration order
};

// Full enumeration of every n*n pattern. Slow and dumb on purpose.
inline SlBruteResult brute_force_sl(int n) {
  if (n < 1 || n > 5)
    throw std::invalid_argument("pattern enumeration capped at side 5");
  std::uint64_t total = 1ull << (n * n);
  std::uint32_t mask = (1u << n) - 1;
  SlBruteResult out{CostValue::top(), SolutionCount(0), Pattern(n)};
  std::vector<std::uint32_t> rows(n);
  for (std::uint64_t code = 0; code < total; ++code) {
    for (int i = 0; i < n; ++i) rows[i] = (code >> (i * n)) & mask;
    Pattern p(n, rows);
    if (!is_stable(p)) continue;
    CostValue c(static_cast<std::uint64_t>(n) * n - p.live_count());
    if (c < out.optimum) {
      out.optimum = c;
      out.count = SolutionCount(1);
      out.best = p;
    } else if (c == out.optimum) {
      out.count += SolutionCount(1);
    }
  }
  return out;
}

struct WcspBruteResult {
  CostValue optimum;
  SolutionCount count;
  std::map<VariableId, Value> assignment;  // first optimum in lexicographic order
};

// Enumerate every assignment of the instance. Refuses outright when the
// state space exceeds the cap; never truncates silently.
inline WcspBruteResult brute_force_wcsp(const WcspInstance& p,
                                        std::uint64_t cap = 1ull << 24) {
  std::vector<VariableId> vars = p.variable_ids();
  std::uint64_t space = 1;
  for (VariableId x : vars) {
    Value d = p.domain_size(x);
    if (space > cap / d) throw std::length_error("state space exceeds oracle cap");
    space *= d;
  }
  VariableId max_id = 0;
  for (VariableId x : vars) max_id = std::max(max_id, x);
  std::vector<Value> asg(vars.empty() ? 1 : max_id + 1, 0);

  WcspBruteResult out{CostValue::top(), SolutionCount(0), {}};
  std::vector<Value> digit(vars.size(), 0);
  for (std::uint64_t it = 0; it < space; ++it) {
    CostValue c = CostValue::zero();
    for (const CostTable& f : p.functions()) c += f.evaluate(asg);
    if (c < out.optimum) {
      out.optimum = c;
      out.count = SolutionCount(1);
      out.assignment.clear();
      for (VariableId x : vars) out.assignment[x] = asg[x];
    } else if (!c.is_top() && c == out.optimum) {
      out.count += SolutionCount(1);
    }
    for (std::size_t k = vars.size(); k-- > 0;) {
      if (++digit[k] < p.domain_size(vars[k])) {
        asg[vars[k]] = digit[k];
        break;
      }
      digit[k] = 0;
      asg[vars[k]] = 0;
    }
  }
  return out;
}

struct SlRefResult {
  CostValue optimum;
  SolutionCount count;
};

// Accepts or rejects candidate values per row; empty filter accepts all.
using RowFilter = std::function<bool(int row, std::uint32_t value)>;

// Best total row cost over all row assignments passing the filter, computed
// by plain dynamic programming over (previous row, current row) states with
// the per-cell reference cost. This is the audit backend for completion
// costs; tests cross-validate it against brute_force_sl at n <= 4.
inline SlRefResult sl_best_completion(int n, const RowFilter& keep = {}) {
  if (n < 1 || n > 8) throw std::invalid_argument("reference DP capped at side 8");
  auto ok = [&](int row, std::uint32_t v) { return !keep || keep(row, v); };
  std::uint32_t dom = 1u << n;
  if (n == 1) {
    SlRefResult out{CostValue::top(), SolutionCount(0)};
    for (std::uint32_t v = 0; v < 2; ++v) {
      if (!ok(1, v)) continue;
      CostValue c = row_cost_ref(1, 0, v, 0, 1);
      if (c < out.optimum) {
        out.optimum = c;
        out.count = SolutionCount(1);
      } else if (!c.is_top() && c == out.optimum) {
        out.count += SolutionCount(1);
      }
    }
    return out;
  }
  // acc[a*dom + b]: best cost of rows 1..i-1 given row i-1 = a, row i = b,
  // counting every row whose cost is fully determined (rows 1..i-1).
  std::vector<CostValue> acc(dom * dom, CostValue::top());
  std::vector<std::uint64_t> cnt(dom * dom, 0);
  for (std::uint32_t a = 0; a < dom; ++a) {
    if (!ok(1, a)) continue;
    for (std::uint32_t b = 0; b < dom; ++b) {
      if (!ok(2, b)) continue;
      CostValue c = row_cost_ref(1, 0, a, b, n);
      acc[a * dom + b] = c;
      cnt[a * dom + b] = c.is_top() ? 0 : 1;
    }
  }
  for (int i = 2; i < n; ++i) {
    std::vector<CostValue> nacc(dom * dom, CostValue::top());
    std::vector<std::uint64_t> ncnt(dom * dom, 0);
    for (std::uint32_t a = 0; a < dom; ++a)
      for (std::uint32_t b = 0; b < dom; ++b) {
        CostValue base = acc[a * dom + b];
        if (base.is_top()) continue;
        for (std::uint32_t v = 0; v < dom; ++v) {
          if (!ok(i + 1, v)) continue;
          CostValue c = base + row_cost_ref(i, a, b, v, n);
          if (c.is_top()) continue;
          CostValue& slot = nacc[b * dom + v];
          if (c < slot) {
            slot = c;
            ncnt[b * dom + v] = cnt[a * dom + b];
          } else if (c == slot) {
            ncnt[b * dom + v] += cnt[a * dom + b];
          }
        }
      }
    acc = std::move(nacc);
    cnt = std::move(ncnt);
  }
  SlRefResult out{CostValue::top(), SolutionCount(0)};
  std::uint64_t total = 0;
  for (std::uint32_t a = 0; a < dom; ++a)
    for (std::uint32_t b = 0; b < dom; ++b) {
      CostValue base = acc[a * dom + b];
      if (base.is_top()) continue;
      CostValue c = base + row_cost_ref(n, a, b, 0, n);
      if (c.is_top()) continue;
      if (c < out.optimum) {
        out.optimum = c;
        total = cnt[a * dom + b];
      } else if (c == out.optimum) {
        total += cnt[a * dom + b];
      }
    }
  out.count = SolutionCount(total);
  return out;
}

// Exhaustive value of a suffix-extension table entry: the best cost of
// rows i-1..n over all choices of rows i..n, given rows i-2 and i-1.
// Direct recursion, no memoization.
inline CostValue suffix_extension_ref(int n, int i, std::uint32_t a,
                                      std::uint32_t b) {
  if (i > n) return row_cost_ref(n, a, b, 0, n);
  std::uint32_t dom = 1u << n;
  CostValue best = CostValue::top();
  for (std::uint32_t v = 0; v < dom; ++v) {
    CostValue c = row_cost_ref(i - 1, a, b, v, n);
    if (c.is_top()) continue;
    c += suffix_extension_ref(n, i + 1, b, v);
    best = std::min(best, c);
  }
  return best;
}

}  // namespace stillife::oracle
