#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "stillife/hyb_solver.hpp"
#include "stillife/oracle.hpp"
#include "stillife/rows.hpp"

namespace stillife {

// Outcome of re-deriving a solver's stored tables and bounds from scratch.
// Violations carry a short description; the list is capped so a systematic
// failure does not balloon the report.
struct AuditReport {
  std::uint64_t nodes = 0;
  std::uint64_t entry_checks = 0;
  std::uint64_t bound_checks = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  void flag(std::string msg) {
    if (violations.size() < 32) violations.push_back(std::move(msg));
  }
};

namespace detail {

// Exhaustive one-side suffix costs under a node's fixed central path:
// entry (a, b) is the best cost of rows level+1..n on that side over all
// deeper lateral words, given rows level and level+1 hold a and b. Plain
// bottom-up recursion on the scalar split costs; no solver kernels.
inline std::vector<CostValue> side_suffix_ref(const NodeAudit& a,
                                              bool left_side) {
  SplitShape s = split_shape(a.n);
  std::uint32_t dom = 1u << a.lat_bits;
  auto cc = [&](int j) -> std::uint32_t {
    if (j < 1 || j > a.n) return 0;
    return static_cast<std::uint32_t>(a.central[j]);
  };
  auto cost = [&](int j, std::uint32_t pl, std::uint32_t cl, std::uint32_t nl) {
    return left_side ? split_row_cost_left(j, pl, cc(j - 1), cl, cc(j), nl,
                                           cc(j + 1), s)
                     : split_row_cost_right(j, pl, cc(j - 1), cl, cc(j), nl,
                                            cc(j + 1), s);
  };
  std::vector<CostValue> cur(std::size_t(dom) * dom);
  for (std::uint32_t x = 0; x < dom; ++x)
    for (std::uint32_t y = 0; y < dom; ++y)
      cur[(std::size_t(x) << a.lat_bits) | y] = cost(a.n, x, y, 0);
  for (int j = a.n - 1; j >= a.level + 1; --j) {
    std::vector<CostValue> next(std::size_t(dom) * dom, CostValue::top());
    for (std::uint32_t x = 0; x < dom; ++x)
      for (std::uint32_t y = 0; y < dom; ++y) {
        CostValue best = CostValue::top();
        for (std::uint32_t v = 0; v < dom; ++v) {
          CostValue c = cost(j, x, y, v);
          if (c.is_top()) continue;
          c += cur[(std::size_t(y) << a.lat_bits) | v];
          best = std::min(best, c);
        }
        next[(std::size_t(x) << a.lat_bits) | y] = best;
      }
    cur = std::move(next);
  }
  return cur;
}

inline void check_node(const NodeAudit& a, AuditReport& rep) {
  ++rep.nodes;
  std::uint32_t dom = 1u << a.lat_bits;
  std::vector<CostValue> exp_left = side_suffix_ref(a, true);
  std::vector<CostValue> exp_right = side_suffix_ref(a, false);
  for (std::uint32_t x = 0; x < dom; ++x)
    for (std::uint32_t y = 0; y < dom; ++y) {
      std::size_t idx = (std::size_t(x) << a.lat_bits) | y;
      rep.entry_checks += 2;
      if (cost_from_u16(a.g_left[idx]) != exp_left[idx]) {
        std::ostringstream os;
        os << "level " << a.level << " g_left(" << x << "," << y << ") = "
           << a.g_left[idx] << ", exhaustive = " << exp_left[idx].raw();
        rep.flag(os.str());
      }
      if (cost_from_u16(a.g_right[idx]) != exp_right[idx]) {
        std::ostringstream os;
        os << "level " << a.level << " g_right(" << x << "," << y << ") = "
           << a.g_right[idx] << ", exhaustive = " << exp_right[idx].raw();
        rep.flag(os.str());
      }
    }

  // Both bounds must be admissible for the node's best full completion,
  // and the look-ahead bound dominates the plain one.
  SplitShape s = split_shape(a.n);
  auto keep = [&](int row, std::uint32_t v) {
    if (a.central[row] < 0) return true;
    return split_row(v, s).center == static_cast<std::uint32_t>(a.central[row]);
  };
  CostValue exact = oracle::sl_best_completion(a.n, keep).optimum;
  rep.bound_checks += 3;
  auto bad = [&](const char* what, CostValue lhs, CostValue rhs) {
    std::ostringstream os;
    os << "level " << a.level << " " << what << ": " << lhs.raw() << " > "
       << rhs.raw();
    rep.flag(os.str());
  };
  if (a.lb_with_h > exact) bad("lb_with_h above exact completion", a.lb_with_h, exact);
  if (a.lb_without_h > exact)
    bad("lb_without_h above exact completion", a.lb_without_h, exact);
  if (a.lb_without_h > a.lb_with_h)
    bad("plain bound above look-ahead bound", a.lb_without_h, a.lb_with_h);
}

}  // namespace detail

// Runs the hybrid solver with a checking sink attached: every emitted node
// has both g tables compared entrywise against exhaustive side recursions
// and both lower bounds validated against the exact completion cost.
inline AuditReport audit_hyb_nodes(int n, const SolveOptions& opt = {}) {
  AuditReport rep;
  solve_sl_hyb(n, opt,
               [&rep](const NodeAudit& a) { detail::check_node(a, rep); });
  return rep;
}

// Recomputes every stored full-row elimination table entry with a
// bottom-up recursion on the scalar per-cell reference cost; these tables
// are exact, so equality is required (not just a bound).
inline AuditReport audit_be_tables(int n) {
  AuditReport rep;
  RowKernel k = make_row_kernel(n);
  BeTables t = compute_be_tables(k, false, "");
  rep.nodes = 1;
  std::uint32_t dom = static_cast<std::uint32_t>(k.dom());
  std::vector<CostValue> ref(std::size_t(dom) * dom);
  for (std::uint32_t a = 0; a < dom; ++a)
    for (std::uint32_t b = 0; b < dom; ++b)
      ref[(std::size_t(a) << n) | b] = oracle::row_cost_ref(n, a, b, 0, n);
  for (int i = n + 1; i >= 3; --i) {
    const RowTable& g = i <= n ? t.g[i] : t.base;
    for (std::uint32_t a = 0; a < dom; ++a)
      for (std::uint32_t b = 0; b < dom; ++b) {
        ++rep.entry_checks;
        CostValue expect = ref[(std::size_t(a) << n) | b];
        if (cost_from_u16(g.at(a, b)) != expect) {
          std::ostringstream os;
          os << "g_" << i << "(" << a << "," << b << ") = " << g.at(a, b)
             << ", exhaustive = " << expect.raw();
          rep.flag(os.str());
        }
      }
    if (i == 3) break;
    std::vector<CostValue> next(std::size_t(dom) * dom, CostValue::top());
    for (std::uint32_t a = 0; a < dom; ++a)
      for (std::uint32_t b = 0; b < dom; ++b) {
        CostValue best = CostValue::top();
        for (std::uint32_t v = 0; v < dom; ++v) {
          CostValue c = oracle::row_cost_ref(i - 2, a, b, v, n);
          if (c.is_top()) continue;
          c += ref[(std::size_t(b) << n) | v];
          best = std::min(best, c);
        }
        next[(std::size_t(a) << n) | b] = best;
      }
    ref = std::move(next);
  }
  // The terminal vector closes the stack: entry a is the best full-board
  // cost with row 1 fixed to a.
  for (std::uint32_t a = 0; a < dom; ++a) {
    ++rep.entry_checks;
    CostValue best = CostValue::top();
    for (std::uint32_t b = 0; b < dom; ++b) {
      CostValue c = oracle::row_cost_ref(1, 0, a, b, n);
      if (c.is_top()) continue;
      c += ref[(std::size_t(a) << n) | b];
      best = std::min(best, c);
    }
    if (cost_from_u16(t.g2[a]) != best) {
      std::ostringstream os;
      os << "terminal(" << a << ") = " << t.g2[a] << ", exhaustive = "
         << best.raw();
      rep.flag(os.str());
    }
  }
  return rep;
}

}  // namespace stillife
