#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>

#include "stillife/cost.hpp"

namespace stillife {

// Rows are words with bit (j-1) = column j (LSB = column 1).

inline std::uint32_t row_mask(int n) {
  return n >= 32 ? ~0u : ((1u << n) - 1);
}
inline std::uint32_t end_columns_mask(int n) {
  return 1u | (1u << (n - 1));
}

inline std::uint32_t reverse_bits(std::uint32_t w, int width) {
  std::uint32_t r = 0;
  for (int k = 0; k < width; ++k)
    if ((w >> k) & 1u) r |= 1u << (width - 1 - k);
  return r;
}

// Bit-sliced per-column neighbor counting: each column's count is held as a
// little 2-, 3- or 4-bit number spread across parallel words, so one word op
// advances every column at once.
struct ColumnSums {
  std::uint32_t lo = 0, hi = 0;  // count = 2*hi + lo, per column
};

// Contribution of a full neighbor row: cells j-1, j, j+1.
inline ColumnSums triple_sums(std::uint32_t w) {
  std::uint32_t a = w << 1, c = w >> 1;
  return {a ^ w ^ c, (a & w) | ((a ^ w) & c)};
}

// Contribution of the cell's own row: cells j-1 and j+1 only.
inline ColumnSums pair_sums(std::uint32_t w) {
  std::uint32_t a = w << 1, c = w >> 1;
  return {a ^ c, a & c};
}

struct ColumnSums3 {
  std::uint32_t b0 = 0, b1 = 0, b2 = 0;  // count = 4*b2 + 2*b1 + b0
};

inline ColumnSums3 add_sums(ColumnSums x, ColumnSums y) {
  std::uint32_t s0 = x.lo ^ y.lo, c0 = x.lo & y.lo;
  std::uint32_t s1 = x.hi ^ y.hi ^ c0;
  std::uint32_t c1 = (x.hi & y.hi) | ((x.hi ^ y.hi) & c0);
  return {s0, s1, c1};
}

// Finish the 8-neighbor count (partial + remaining row) and flag violations
// of the two cell-stability conditions for the cells selected by `mask`.
inline std::uint32_t unstable_from_sums(ColumnSums3 partial, ColumnSums rest,
                                        std::uint32_t cur, std::uint32_t mask) {
  std::uint32_t t0 = partial.b0 ^ rest.lo;
  std::uint32_t c0 = partial.b0 & rest.lo;
  std::uint32_t t1 = partial.b1 ^ rest.hi ^ c0;
  std::uint32_t c1 = (partial.b1 & rest.hi) | ((partial.b1 ^ rest.hi) & c0);
  std::uint32_t t2 = partial.b2 ^ c1;
  std::uint32_t t3 = partial.b2 & c1;
  std::uint32_t ok23 = t1 & ~t2 & ~t3;  // neighbor count is 2 or 3
  std::uint32_t eq3 = ok23 & t0;
  return ((cur & ~ok23) | (~cur & eq3)) & mask;
}

inline std::uint32_t unstable_mask(std::uint32_t prev, std::uint32_t cur,
                                   std::uint32_t next, std::uint32_t mask) {
  return unstable_from_sums(add_sums(triple_sums(prev), pair_sums(cur)),
                            triple_sums(next), cur, mask);
}

// Cells that sit in the middle of three consecutive living cells of w.
inline std::uint32_t horizontal_middles(std::uint32_t w) {
  return w & (w << 1) & (w >> 1);
}

// Row cost function: Top if any cell of row i is unstable given its
// neighboring rows or a boundary condition carried by this row fails
// (horizontal triples of rows 1 and n; vertical boundary triples centered on
// internal rows); else the dead-cell count of the row. prev/next are ignored
// for the top/bottom row.
inline CostValue row_cost(int i, std::uint32_t prev, std::uint32_t cur,
                          std::uint32_t next, int n) {
  std::uint32_t mask = row_mask(n);
  if (i == 1) prev = 0;
  if (i == n) next = 0;
  std::uint32_t bad = unstable_mask(prev, cur, next, mask);
  if (i == 1 || i == n) bad |= horizontal_middles(cur) & mask;
  bad |= prev & cur & next & end_columns_mask(n);
  if (bad) return CostValue::top();
  return CostValue(static_cast<std::uint64_t>(n - std::popcount(cur & mask)));
}

// --- vertically symmetric rows (half encodings) -------------------------

inline int symmetric_width(int n) { return (n + 1) / 2; }

// Append the mirror of the first floor(n/2) columns; the result reads the
// same left-to-right and right-to-left.
inline std::uint32_t expand_symmetric(std::uint32_t half, int n) {
  int fold = n / 2;
  return half | (reverse_bits(half & row_mask(fold), fold) << (n - fold));
}

// --- lateral/central row split ------------------------------------------

// Columns 1..halfw are the left lateral block, the next cw columns are the
// shared center (two for even n; three for odd n so that every center
// cell's neighborhood stays inside lateral+center on one side), and the
// last halfw columns are the right lateral block with LSB = its leftmost
// column. The left cost covers columns 1..halfw+1, the right cost mirrors
// it, and for odd n the self-mirrored middle column is costed separately.
struct SplitShape {
  int n = 0;
  int halfw = 0;      // lateral width per side
  int cw = 0;         // center width (2 or 3)
  std::uint32_t latmask = 0, cmask = 0;
  std::uint32_t leftcells = 0;  // columns whose cost the left function carries
};

inline SplitShape split_shape(int n) {
  if (n < 4) throw std::invalid_argument("split rows need side >= 4");
  SplitShape s;
  s.n = n;
  if (n % 2 == 0) {
    s.halfw = n / 2 - 1;
    s.cw = 2;
  } else {
    s.halfw = (n - 3) / 2;
    s.cw = 3;
  }
  s.latmask = row_mask(s.halfw);
  s.cmask = row_mask(s.cw);
  s.leftcells = row_mask(s.halfw + 1);
  return s;
}

struct SplitRow {
  std::uint32_t left = 0, center = 0, right = 0;
  friend bool operator==(SplitRow, SplitRow) = default;
};

inline SplitRow split_row(std::uint32_t row, const SplitShape& s) {
  return {row & s.latmask, (row >> s.halfw) & s.cmask,
          (row >> (s.halfw + s.cw)) & s.latmask};
}

inline std::uint32_t combine_row(SplitRow r, const SplitShape& s) {
  return r.left | (r.center << s.halfw) | (r.right << (s.halfw + s.cw));
}

// Left-side columns assembled into one word (lateral bits low, center high).
inline std::uint32_t left_word(std::uint32_t lat, std::uint32_t c,
                               const SplitShape& s) {
  return lat | (c << s.halfw);
}

// Sum of cell costs of columns 1..halfw+1 of row i. Everything those cells
// can see (their own block plus the full center) is inside the arguments.
inline CostValue split_row_cost_left(int i, std::uint32_t pl, std::uint32_t pc,
                                     std::uint32_t cl, std::uint32_t cc,
                                     std::uint32_t nl, std::uint32_t nc,
                                     const SplitShape& s) {
  std::uint32_t wp = left_word(pl, pc, s);
  std::uint32_t wc = left_word(cl, cc, s);
  std::uint32_t wn = left_word(nl, nc, s);
  if (i == 1) wp = 0;
  if (i == s.n) wn = 0;
  std::uint32_t bad = unstable_mask(wp, wc, wn, s.leftcells);
  if (i == 1 || i == s.n) bad |= horizontal_middles(wc) & s.leftcells;
  bad |= wp & wc & wn & 1u;  // column-1 vertical middle
  if (bad) return CostValue::top();
  return CostValue(
      static_cast<std::uint64_t>(s.halfw + 1 - std::popcount(wc & s.leftcells)));
}

// Mirror image: reflecting columns turns the right half into a left-half
// problem (right lateral bit k maps to left lateral bit halfw-1-k, center
// bits reverse), so the right cost is the left cost of the reflected parts.
inline CostValue split_row_cost_right(int i, std::uint32_t pl, std::uint32_t pc,
                                      std::uint32_t cl, std::uint32_t cc,
                                      std::uint32_t nl, std::uint32_t nc,
                                      const SplitShape& s) {
  return split_row_cost_left(
      i, reverse_bits(pl, s.halfw), reverse_bits(pc, s.cw),
      reverse_bits(cl, s.halfw), reverse_bits(cc, s.cw),
      reverse_bits(nl, s.halfw), reverse_bits(nc, s.cw), s);
}

// Odd n only: cost of the self-mirrored middle column's cell, which sees
// center columns alone. Even shapes have no such cell and return zero.
inline CostValue split_row_cost_mid(int i, std::uint32_t pc, std::uint32_t cc,
                                    std::uint32_t nc, const SplitShape& s) {
  if (s.cw != 3) return CostValue::zero();
  if (i == 1) pc = 0;
  if (i == s.n) nc = 0;
  bool alive = (cc >> 1) & 1u;
  int cnt = std::popcount(pc & 7u) + std::popcount(nc & 7u) +
            static_cast<int>(cc & 1u) + static_cast<int>((cc >> 2) & 1u);
  bool bad = alive ? (cnt != 2 && cnt != 3) : (cnt == 3);
  if (!bad && alive && (i == 1 || i == s.n) && (cc & 1u) && ((cc >> 2) & 1u))
    bad = true;  // horizontal boundary middle
  if (bad) return CostValue::top();
  return CostValue(alive ? 0 : 1);
}

inline CostValue split_row_cost_left(int i, SplitRow a, SplitRow b, SplitRow c,
                                     const SplitShape& s) {
  return split_row_cost_left(i, a.left, a.center, b.left, b.center, c.left,
                             c.center, s);
}
inline CostValue split_row_cost_right(int i, SplitRow a, SplitRow b, SplitRow c,
                                      const SplitShape& s) {
  return split_row_cost_right(i, a.right, a.center, b.right, b.center, c.right,
                              c.center, s);
}
inline CostValue split_row_cost_mid(int i, SplitRow a, SplitRow b, SplitRow c,
                                    const SplitShape& s) {
  return split_row_cost_mid(i, a.center, b.center, c.center, s);
}

}  // namespace stillife
