#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "stillife/budget.hpp"
#include "stillife/cost.hpp"
#include "stillife/cost_table.hpp"
#include "stillife/rows.hpp"

namespace stillife {

// Per-word lookup tables over one side's packed words (lateral bits low,
// central bits above, as produced by left_word). The right side reuses the
// same kernel through index reversal, so only left tables ever exist.
struct LeftKernel {
  SplitShape s;
  int wbits = 0;  // bits per packed word: halfw + cw
  std::vector<std::uint32_t> t3lo, t3hi;  // triple_sums per word
  std::vector<std::uint32_t> p2lo, p2hi;  // pair_sums per word
  std::vector<std::uint16_t> dead;        // owned dead cells of the word
  std::vector<std::uint8_t> edge_ok;      // no horizontal triple middles

  std::size_t dom() const { return std::size_t(1) << wbits; }
};

inline LeftKernel make_left_kernel(int n) {
  LeftKernel k;
  k.s = split_shape(n);
  k.wbits = k.s.halfw + k.s.cw;
  std::size_t dom = std::size_t(1) << k.wbits;
  k.t3lo.resize(dom);
  k.t3hi.resize(dom);
  k.p2lo.resize(dom);
  k.p2hi.resize(dom);
  k.dead.resize(dom);
  k.edge_ok.resize(dom);
  for (std::size_t w = 0; w < dom; ++w) {
    std::uint32_t u = static_cast<std::uint32_t>(w);
    ColumnSums t = triple_sums(u), p = pair_sums(u);
    k.t3lo[w] = t.lo;
    k.t3hi[w] = t.hi;
    k.p2lo[w] = p.lo;
    k.p2hi[w] = p.hi;
    k.dead[w] = static_cast<std::uint16_t>(
        k.s.halfw + 1 - std::popcount(u & k.s.leftcells));
    k.edge_ok[w] = (horizontal_middles(u) & k.s.leftcells) == 0 ? 1 : 0;
  }
  return k;
}

// Look-ahead table for one processed depth: entry (first, second) is the
// cheapest left-side completion of all shallower rows when `first` and
// `second` are the two rows bounding the processed block. Arguments are
// packed words; the pair packs into one flat index, first row high.
struct HTable {
  int wbits = 0;
  std::vector<CostValue> v;

  HTable() = default;
  explicit HTable(int wbits_)
      : wbits(wbits_),
        v(std::size_t(1) << (2 * wbits_), CostValue::top()) {}

  CostValue at(std::uint32_t first, std::uint32_t second) const {
    return v[(std::size_t(first) << wbits) | second];
  }
};

struct HTables {
  SplitShape s;
  int wbits = 0;
  std::vector<HTable> h;   // plain left family; slot 0 unused
  std::vector<HTable> hm;  // with middle-column costs folded in (odd sides)

  bool has(int i) const { return i >= 1 && i < static_cast<int>(h.size()); }

  // Family used for the unmirrored side: tighter when a middle column
  // exists, identical to the plain family otherwise.
  const HTable& left(int i) const { return (hm.empty() ? h : hm)[i]; }
};

inline std::uint64_t h_planned_bytes(int n, int wbits, bool two_families) {
  std::uint64_t entries = std::uint64_t(1) << (2 * wbits);
  std::uint64_t words = std::uint64_t(1) << wbits;
  std::uint64_t per = std::uint64_t(n - 2) * entries * 8;
  return per * (two_families ? 2 : 1)  // CostValue tables
         + words * 2                   // u16 scratch row
         + words * 19;                 // kernel lookups
}

namespace detail {

// One family of look-ahead tables, eliminating rows upward: level 1 folds
// the two boundary-adjacent rows, each further level folds one more row
// into the previous table. The third row's central value is constant per
// block of the inner loop, which keeps the lateral sweep vectorizable and
// lets the middle-column cost join as a per-block constant.
inline std::vector<HTable> fill_h_family(int n, const LeftKernel& k,
                                         bool with_mids) {
  const SplitShape& s = k.s;
  int halfw = s.halfw;
  std::size_t dom = k.dom();
  std::size_t latdom = std::size_t(1) << halfw;
  Value cdom = Value(1) << s.cw;
  std::vector<HTable> h(n - 1);
  std::vector<std::uint16_t> out(dom);
  const std::uint32_t* t3lo = k.t3lo.data();
  const std::uint32_t* t3hi = k.t3hi.data();

  for (int i = 1; i <= n - 2; ++i) {
    HTable& hi = h[i];
    hi = HTable(k.wbits);
    const HTable* prev = i >= 2 ? &h[i - 1] : nullptr;
    for (std::size_t mid = 0; mid < dom; ++mid) {
      std::uint32_t wm = static_cast<std::uint32_t>(mid);
      Value cmid = static_cast<Value>(mid >> halfw);
      std::fill(out.begin(), out.end(), kTop16);
      for (std::size_t lo = 0; lo < dom; ++lo) {
        // Cost of everything below the (lo, mid) boundary. At the bottom
        // level that is row 1's own cost; above it is the previous table.
        std::uint64_t below;
        Value clo = static_cast<Value>(lo >> halfw);
        if (prev) {
          CostValue c = prev->at(static_cast<std::uint32_t>(lo), wm);
          if (c.is_top()) continue;
          below = c.raw();
        } else {
          std::uint32_t wl = static_cast<std::uint32_t>(lo);
          if (!k.edge_ok[lo] || unstable_mask(0, wl, wm, s.leftcells))
            continue;
          below = k.dead[lo];
          if (with_mids) {
            CostValue m = split_row_cost_mid(1, 0, clo, cmid, s);
            if (m.is_top()) continue;
            below += m.raw();
          }
        }
        ColumnSums3 partial = add_sums({t3lo[lo], t3hi[lo]},
                                       {k.p2lo[mid], k.p2hi[mid]});
        if (partial.b2 & wm & s.leftcells) continue;
        std::uint32_t vc = static_cast<std::uint32_t>(lo) & wm & 1u;
        for (Value cv = 0; cv < cdom; ++cv) {
          std::uint64_t blk = below;
          if (with_mids) {
            CostValue m = split_row_cost_mid(i + 1, clo, cmid, cv, s);
            if (m.is_top()) continue;
            blk += m.raw();
          }
          std::uint32_t b16 = static_cast<std::uint32_t>(blk);
          std::size_t base = std::size_t(cv) << halfw;
          std::uint16_t* o = out.data() + base;
          const std::uint32_t* bt3lo = t3lo + base;
          const std::uint32_t* bt3hi = t3hi + base;
          for (std::size_t v = 0; v < latdom; ++v) {
            std::uint32_t un =
                unstable_from_sums(partial, {bt3lo[v], bt3hi[v]}, wm,
                                   s.leftcells) |
                (vc & static_cast<std::uint32_t>(v));
            std::uint32_t cand = un == 0 ? b16 : kTop16;
            std::uint32_t cur = o[v];
            o[v] = static_cast<std::uint16_t>(std::min(cur, cand));
          }
        }
      }
      CostValue* row = &hi.v[mid << k.wbits];
      for (std::size_t v = 0; v < dom; ++v)
        row[v] = out[v] == kTop16
                     ? CostValue::top()
                     : CostValue(std::uint64_t(out[v]) + k.dead[mid]);
    }
  }
  return h;
}

}  // namespace detail

inline HTables compute_h_tables(int n) {
  LeftKernel k = make_left_kernel(n);
  bool two = k.s.cw == 3;
  check_budget(h_planned_bytes(n, k.wbits, two), "raise STILLIFE_MEM_BUDGET");
  HTables t;
  t.s = k.s;
  t.wbits = k.wbits;
  t.h = detail::fill_h_family(n, k, false);
  if (two) t.hm = detail::fill_h_family(n, k, true);
  return t;
}

// The mirrored table: right-side look-ahead values are the left table read
// at reflected indices, so they are never stored. Arguments follow the
// (central, lateral) order per row.
inline CostValue h_right(const HTable& h, const SplitShape& s, Value a_c,
                         std::uint32_t a_lat, Value b_c, std::uint32_t b_lat) {
  std::uint32_t first =
      left_word(reverse_bits(a_lat, s.halfw), reverse_bits(a_c, s.cw), s);
  std::uint32_t second =
      left_word(reverse_bits(b_lat, s.halfw), reverse_bits(b_c, s.cw), s);
  return h.at(first, second);
}

}  // namespace stillife
