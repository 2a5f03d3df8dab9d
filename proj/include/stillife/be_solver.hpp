#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stillife/budget.hpp"
#include "stillife/cost.hpp"
#include "stillife/life.hpp"
#include "stillife/rows.hpp"

namespace stillife {

// Per-value lookup tables for one row domain. Domain values are table
// indices; `word` maps them to full-width row words — the identity for the
// plain domain, the mirror expansion for the symmetric one. All solvers
// evaluate stability through these words, so they share one kernel.
struct RowKernel {
  int n = 0;     // board side
  int bits = 0;  // log2 of the domain size
  std::uint32_t mask = 0;
  std::vector<std::uint32_t> word;
  std::vector<std::uint32_t> t3lo, t3hi;  // triple_sums(word), bit-sliced
  std::vector<std::uint32_t> p2lo, p2hi;  // pair_sums(word)
  std::vector<std::uint16_t> dead;        // n - popcount(word)
  std::vector<std::uint8_t> edge_ok;      // no horizontal triple middles

  std::size_t dom() const { return word.size(); }
};

inline RowKernel make_kernel_from_words(int n, int bits,
                                        std::vector<std::uint32_t> words) {
  RowKernel k;
  k.n = n;
  k.bits = bits;
  k.mask = row_mask(n);
  k.word = std::move(words);
  std::size_t dom = k.word.size();
  k.t3lo.resize(dom);
  k.t3hi.resize(dom);
  k.p2lo.resize(dom);
  k.p2hi.resize(dom);
  k.dead.resize(dom);
  k.edge_ok.resize(dom);
  for (std::size_t v = 0; v < dom; ++v) {
    std::uint32_t w = k.word[v];
    ColumnSums t = triple_sums(w), p = pair_sums(w);
    k.t3lo[v] = t.lo;
    k.t3hi[v] = t.hi;
    k.p2lo[v] = p.lo;
    k.p2hi[v] = p.hi;
    k.dead[v] = static_cast<std::uint16_t>(n - std::popcount(w));
    k.edge_ok[v] = horizontal_middles(w) == 0 ? 1 : 0;
  }
  return k;
}

inline RowKernel make_row_kernel(int n) {
  std::vector<std::uint32_t> words(std::size_t(1) << n);
  for (std::size_t v = 0; v < words.size(); ++v)
    words[v] = static_cast<std::uint32_t>(v);
  return make_kernel_from_words(n, n, std::move(words));
}

// Dense cost table over (a,b) domain pairs with kTop16 as sentinel.
struct RowTable {
  int bits = 0;
  std::vector<std::uint16_t> v;

  RowTable() = default;
  explicit RowTable(int bits_)
      : bits(bits_), v(std::size_t(1) << (2 * bits_), kTop16) {}

  std::uint16_t at(std::uint32_t a, std::uint32_t b) const {
    return v[(std::size_t(a) << bits) | b];
  }
  std::uint16_t& at(std::uint32_t a, std::uint32_t b) {
    return v[(std::size_t(a) << bits) | b];
  }
};

// Base table: f_n(b, v), the cost of bottom row v below row b. Plays the
// role of g_{n+1} so the elimination recursion has a uniform shape.
inline RowTable be_base_table(const RowKernel& k) {
  RowTable t(k.bits);
  std::size_t dom = k.dom();
  for (std::size_t b = 0; b < dom; ++b) {
    std::uint32_t wb = k.word[b];
    ColumnSums3 partial = add_sums(triple_sums(wb), ColumnSums{});
    std::uint16_t* out = &t.v[b << k.bits];
    for (std::size_t v = 0; v < dom; ++v) {
      std::uint32_t un = unstable_from_sums(partial, {k.p2lo[v], k.p2hi[v]},
                                            k.word[v], k.mask) |
                         (k.edge_ok[v] ^ 1u);
      std::uint32_t dead = k.dead[v];
      out[v] = static_cast<std::uint16_t>(un == 0 ? dead : kTop16);
    }
  }
  return t;
}

// One elimination level: g_i(a,b) = min over v of
// [f_{i-1}(a,b,v) + g_next(b,v)], where g_next is g_{i+1} (the f_n base
// when i = n) and f_{i-1} is the cost of internal row i-1.
inline RowTable be_eliminate_row(int i, const RowTable& g_next,
                                 const RowKernel& k) {
  if (i < 3 || i > k.n) throw std::invalid_argument("row index out of range");
  RowTable t(k.bits);
  std::size_t dom = k.dom();
  std::uint32_t ends = end_columns_mask(k.n);
  const std::uint32_t* t3lo = k.t3lo.data();
  const std::uint32_t* t3hi = k.t3hi.data();
  const std::uint32_t* words = k.word.data();
  for (std::size_t a = 0; a < dom; ++a) {
    ColumnSums ta{k.t3lo[a], k.t3hi[a]};
    for (std::size_t b = 0; b < dom; ++b) {
      ColumnSums3 partial = add_sums(ta, {k.p2lo[b], k.p2hi[b]});
      std::uint32_t wb = k.word[b];
      // A live cell of b already over-fed by a and b alone stays over-fed
      // for every v, so the whole (a,b) slice is infeasible.
      if (partial.b2 & wb & k.mask) continue;
      std::uint32_t vc = words[a] & wb & ends;
      const std::uint16_t* gn = &g_next.v[b << k.bits];
      std::uint32_t best = kTop16;
      for (std::size_t v = 0; v < dom; ++v) {
        std::uint32_t un =
            unstable_from_sums(partial, {t3lo[v], t3hi[v]}, wb, k.mask) |
            (vc & words[v]);
        std::uint32_t g = gn[v];  // unconditional load keeps this loop SIMD
        std::uint32_t cand = un == 0 ? g : kTop16;
        best = std::min(best, cand);
      }
      t.at(a, b) = best == kTop16
                       ? kTop16
                       : static_cast<std::uint16_t>(best + k.dead[b]);
    }
  }
  return t;
}

// Terminal unary: g_2(x1) = min over x2 of [f_1(x1,x2) + g3(x1,x2)].
inline std::vector<std::uint16_t> be_terminal(const RowTable& g3,
                                              const RowKernel& k) {
  std::size_t dom = k.dom();
  std::vector<std::uint16_t> g2(dom, kTop16);
  for (std::size_t a = 0; a < dom; ++a) {
    if (!k.edge_ok[a]) continue;
    ColumnSums3 partial = add_sums(ColumnSums{}, {k.p2lo[a], k.p2hi[a]});
    std::uint32_t wa = k.word[a];
    const std::uint16_t* g = &g3.v[a << k.bits];
    const std::uint32_t* t3lo = k.t3lo.data();
    const std::uint32_t* t3hi = k.t3hi.data();
    std::uint32_t best = kTop16;
    for (std::size_t b = 0; b < dom; ++b) {
      std::uint32_t un =
          unstable_from_sums(partial, {t3lo[b], t3hi[b]}, wa, k.mask);
      std::uint32_t gb = g[b];
      std::uint32_t cand = un == 0 ? gb : kTop16;
      best = std::min(best, cand);
    }
    if (best != kTop16)
      g2[a] = static_cast<std::uint16_t>(best + k.dead[a]);
  }
  return g2;
}

// The full stored stack: base (f_n), g_i for i in [3..n], terminal g_2.
// Retained whole because phase two re-derives argmins from it.
struct BeTables {
  int n = 0;
  RowTable base;
  std::vector<RowTable> g;  // index i holds g_i; slots 0..2 unused
  std::vector<std::uint16_t> g2;

  const RowTable& table_after(int i) const {  // g_{i+1}, or the base
    return i + 1 <= n ? g[i + 1] : base;
  }
};

inline std::uint64_t be_planned_bytes(int n, std::size_t dom, bool counting) {
  std::uint64_t entries = std::uint64_t(dom) * dom;
  std::uint64_t bytes = std::uint64_t(n - 1) * entries * 2;  // base + g_3..g_n
  if (counting) bytes += 2 * entries * 8;                    // streamed counts
  bytes += dom * 32;                                         // kernel tables
  return bytes;
}

inline BeTables compute_be_tables(const RowKernel& k, bool counting,
                                  const std::string& suggestion) {
  if (k.n < 2) throw std::invalid_argument("elimination needs two rows");
  check_budget(be_planned_bytes(k.n, k.dom(), counting), suggestion);
  BeTables t;
  t.n = k.n;
  t.base = be_base_table(k);
  t.g.resize(k.n + 1);
  for (int i = k.n; i >= 3; --i) t.g[i] = be_eliminate_row(i, t.table_after(i), k);
  t.g2 = be_terminal(k.n >= 3 ? t.g[3] : t.base, k);
  return t;
}

// Streamed solution counting over the stored stack. Counts follow the cost
// recursion: a bucket entry's count is the sum, over minimizing values, of
// the deeper table's counts.
inline SolutionCount count_be_solutions(const BeTables& t, const RowKernel& k) {
  std::size_t dom = k.dom();
  std::vector<std::uint64_t> next(dom * dom), cur(dom * dom);
  for (std::size_t idx = 0; idx < dom * dom; ++idx)
    next[idx] = t.base.v[idx] != kTop16 ? 1 : 0;

  std::uint32_t ends = end_columns_mask(k.n);
  const std::uint32_t* t3lo = k.t3lo.data();
  const std::uint32_t* t3hi = k.t3hi.data();
  const std::uint32_t* words = k.word.data();
  for (int i = k.n; i >= 3; --i) {
    const RowTable& gi = t.g[i];
    const RowTable& gn = t.table_after(i);
    // An entry sums at most dom addends from `next`, so when the largest
    // value fits dom times over, plain u64 sums cannot wrap and the inner
    // loop stays branch-free. Otherwise redo the level with checked adds.
    std::uint64_t biggest = 0;
    for (std::uint64_t x : next) biggest = std::max(biggest, x);
    bool unchecked = biggest <= ~std::uint64_t{0} / dom;
    for (std::size_t a = 0; a < dom; ++a) {
      ColumnSums ta{t3lo[a], t3hi[a]};
      for (std::size_t b = 0; b < dom; ++b) {
        std::uint64_t& slot = cur[(a << k.bits) | b];
        slot = 0;
        std::uint16_t target = gi.at(a, b);
        if (target == kTop16) continue;
        std::uint32_t inner = static_cast<std::uint32_t>(target - k.dead[b]);
        ColumnSums3 partial = add_sums(ta, {k.p2lo[b], k.p2hi[b]});
        std::uint32_t wb = words[b];
        std::uint32_t vc = words[a] & wb & ends;
        const std::uint16_t* row = &gn.v[b << k.bits];
        const std::uint64_t* nx = &next[b << k.bits];
        if (unchecked) {
          std::uint64_t sum = 0;
          for (std::size_t v = 0; v < dom; ++v) {
            std::uint32_t un =
                unstable_from_sums(partial, {t3lo[v], t3hi[v]}, wb, k.mask) |
                (vc & words[v]) | (row[v] ^ inner);
            sum += un == 0 ? nx[v] : 0;
          }
          slot = sum;
        } else {
          SolutionCount sum(0);
          for (std::size_t v = 0; v < dom; ++v) {
            std::uint32_t un =
                unstable_from_sums(partial, {t3lo[v], t3hi[v]}, wb, k.mask) |
                (vc & words[v]) | (row[v] ^ inner);
            if (un == 0) sum += SolutionCount(nx[v]);
          }
          slot = sum.value();
        }
      }
    }
    std::swap(cur, next);
  }

  // Terminal: fold x2 into g_2, then sum over optimal x1.
  std::uint16_t opt = kTop16;
  for (std::uint16_t v : t.g2) opt = std::min(opt, v);
  if (opt == kTop16) return SolutionCount(0);
  const RowTable& g3 = t.n >= 3 ? t.g[3] : t.base;
  SolutionCount total(0);
  for (std::size_t a = 0; a < dom; ++a) {
    if (t.g2[a] != opt || !k.edge_ok[a]) continue;
    std::uint16_t inner = static_cast<std::uint16_t>(opt - k.dead[a]);
    ColumnSums3 partial = add_sums(ColumnSums{}, {k.p2lo[a], k.p2hi[a]});
    std::uint32_t wa = k.word[a];
    for (std::size_t b = 0; b < dom; ++b) {
      if (g3.at(a, b) != inner) continue;
      std::uint32_t un =
          unstable_from_sums(partial, {k.t3lo[b], k.t3hi[b]}, wa, k.mask);
      if (un == 0) total += SolutionCount(next[(a << k.bits) | b]);
    }
  }
  return total;
}

// Phase two: walk rows top-down re-deriving each argmin (lowest value on
// ties) through the stored tables. Uses the plain row_cost evaluator, not
// the bit-sliced fill loops, as an internal cross-check.
inline Pattern reconstruct_be_pattern(const BeTables& t, const RowKernel& k) {
  int n = k.n;
  std::size_t dom = k.dom();
  std::vector<std::uint32_t> val(n + 1, 0);

  std::uint16_t opt = kTop16;
  for (std::size_t a = 0; a < dom; ++a)
    if (t.g2[a] < opt) {
      opt = t.g2[a];
      val[1] = static_cast<std::uint32_t>(a);
    }
  if (opt == kTop16) throw std::logic_error("no stable pattern found");

  auto pick = [&](int row, std::uint32_t wprev2, std::uint32_t wprev,
                  const RowTable& deeper, std::uint32_t prev) {
    CostValue best = CostValue::top();
    std::uint32_t bestv = 0;
    for (std::size_t v = 0; v < dom; ++v) {
      CostValue c = row_cost(row, wprev2, wprev, k.word[v], n);
      if (c.is_top()) continue;
      c += cost_from_u16(deeper.at(prev, static_cast<std::uint32_t>(v)));
      if (c < best) {
        best = c;
        bestv = static_cast<std::uint32_t>(v);
      }
    }
    if (best.is_top()) throw std::logic_error("reconstruction dead end");
    return bestv;
  };

  // x2 from g3 (or the base when n = 2), then each deeper row in turn.
  val[2] = pick(1, 0, k.word[val[1]], t.n >= 3 ? t.g[3] : t.base, val[1]);
  for (int i = 3; i <= n; ++i)
    val[i] = pick(i - 1, k.word[val[i - 2]], k.word[val[i - 1]],
                  t.table_after(i), val[i - 1]);

  std::vector<std::uint32_t> rows(n);
  for (int i = 1; i <= n; ++i) rows[i - 1] = k.word[val[i]];
  return Pattern(n, rows);
}

struct SlSolveResult {
  CostValue optimum;  // dead cells
  Pattern pattern;
  std::optional<SolutionCount> count;
};

// Shared driver: full elimination over whatever row domain the kernel
// describes, then reconstruction and optional counting.
inline SlSolveResult solve_rows_with_kernel(const RowKernel& k,
                                            bool count_solutions,
                                            const std::string& suggestion) {
  BeTables t = compute_be_tables(k, count_solutions, suggestion);
  std::uint16_t opt = kTop16;
  for (std::uint16_t v : t.g2) opt = std::min(opt, v);
  SlSolveResult r{cost_from_u16(opt), Pattern(k.n), std::nullopt};
  if (!r.optimum.is_top()) r.pattern = reconstruct_be_pattern(t, k);
  if (count_solutions) r.count = count_be_solutions(t, k);
  return r;
}

inline SlSolveResult solve_sl_be(int n, bool count_solutions = false) {
  if (n < 1 || n > 30) throw std::invalid_argument("side out of range");
  if (n == 1) {
    // A lone live cell starves; only the empty board is stable.
    return {CostValue(1), Pattern(1),
            count_solutions ? std::optional(SolutionCount(1)) : std::nullopt};
  }
  return solve_rows_with_kernel(make_row_kernel(n), count_solutions,
                                "use --alg hyb, or raise STILLIFE_MEM_BUDGET");
}

}  // namespace stillife
