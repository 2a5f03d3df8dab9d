#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "stillife/be_solver.hpp"
#include "stillife/budget.hpp"
#include "stillife/cost.hpp"
#include "stillife/life.hpp"
#include "stillife/mb_bounds.hpp"
#include "stillife/rows.hpp"
#include "stillife/ssl_solver.hpp"

namespace stillife {

struct SolveOptions {
  bool use_mb_lb = true;    // look-ahead tables in the lower bound
  bool use_ssl_ub = true;   // seed the incumbent from the symmetric solver
  bool use_symmetry = true; // prune mirror-image central prefixes
};

// Snapshot of one search node, emitted after its g tables are built. Both
// bounds are always present so a checker can compare them; the right table
// is converted to raw right-field coordinates.
struct NodeAudit {
  int n = 0;
  int level = 0;                 // deepest assigned central row
  int lat_bits = 0;
  std::vector<int> central;      // index by row; -1 where unassigned
  std::vector<std::uint16_t> g_left;   // g_{level+2} left, (a << bits) | b
  std::vector<std::uint16_t> g_right;  // same scope, raw right laterals
  CostValue lb_with_h;           // bound using the look-ahead tables
  CostValue lb_without_h;        // plain sum of per-side table minima
};
using AuditSink = std::function<void(const NodeAudit&)>;

// Planned allocation of the hybrid search: per-level side tables, the
// packed-word kernel, and whichever aids the flags request.
inline std::uint64_t hyb_planned_bytes(int n, const SolveOptions& opt,
                                       bool with_audit = false) {
  SplitShape s = split_shape(n);
  int wbits = s.halfw + s.cw;
  std::uint64_t latdom = std::uint64_t(1) << s.halfw;
  std::uint64_t planned = std::uint64_t(n - 1) * 2 * (latdom * latdom) * 2 +
                          (std::uint64_t(1) << wbits) * 19;
  if (opt.use_mb_lb || with_audit)
    planned += h_planned_bytes(n, wbits, s.cw == 3);
  if (opt.use_ssl_ub)
    planned +=
        be_planned_bytes(n, std::size_t(1) << symmetric_width(n), false);
  return planned;
}

namespace detail {

class HybSearch {
 public:
  HybSearch(int n, const SolveOptions& opt, AuditSink audit)
      : n_(n), opt_(opt), audit_(std::move(audit)), k_(make_left_kernel(n)) {
    s_ = k_.s;
    latbits_ = s_.halfw;
    latdom_ = std::uint32_t(1) << latbits_;
    wbits_ = latbits_ + s_.cw;
    cdom_ = Value(1) << s_.cw;
    check_budget(hyb_planned_bytes(n_, opt_, bool(audit_)),
                 "raise STILLIFE_MEM_BUDGET");

    if (opt_.use_mb_lb || audit_) ht_ = compute_h_tables(n_);
    gl_.resize(n_ + 2);
    grm_.resize(n_ + 2);
    for (int i = 3; i <= n_ + 1; ++i) {
      gl_[i] = RowTable(latbits_);
      grm_[i] = RowTable(latbits_);
    }
    central_.assign(n_ + 1, 0);
    crev_.resize(cdom_);
    for (Value c = 0; c < cdom_; ++c) crev_[c] = reverse_bits(c, s_.cw);
  }

  SlSolveResult run() {
    ub_ = CostValue::top();
    if (opt_.use_ssl_ub) {
      SlSolveResult seed = solve_ssl_be(n_);
      ub_ = seed.optimum;
      best_ = seed.pattern;
      has_best_ = true;
    }
    for (Value cn = 0; cn < cdom_; ++cn) {
      bool tie0;
      if (skip_by_symmetry(cn, true, tie0)) continue;
      central_[n_] = cn;
      for (Value cn1 = 0; cn1 < cdom_; ++cn1) {
        bool tie1;
        if (skip_by_symmetry(cn1, tie0, tie1)) continue;
        central_[n_ - 1] = cn1;
        fill_base(gl_[n_ + 1], cn1, cn);
        fill_base(grm_[n_ + 1], crev_[cn1], crev_[cn]);
        for (Value cn2 = 0; cn2 < cdom_; ++cn2) {
          bool tie2;
          if (skip_by_symmetry(cn2, tie1, tie2)) continue;
          central_[n_ - 2] = cn2;
          enter(n_ - 2, tie2);
        }
      }
    }
    if (!has_best_) throw std::logic_error("search ended without a pattern");
    return {ub_, best_, std::nullopt};
  }

 private:
  static constexpr std::uint64_t kTopRaw =
      std::numeric_limits<std::uint64_t>::max();

  // Canonical-prefix test: with a tied prefix, a value above its own
  // reversal makes the assignment lexicographically greater than its
  // mirror image, which was (or will be) explored as the representative.
  bool skip_by_symmetry(Value v, bool tie_in, bool& tie_out) const {
    if (!opt_.use_symmetry) {
      tie_out = false;
      return false;
    }
    Value r = crev_[v];
    if (tie_in && v > r) return true;
    tie_out = tie_in && v == r;
    return false;
  }

  // g_{i+2}(a, b) = min over v of [row i+1's left cost under centrals
  // (ci, ci1, ci2) and laterals (a, b, v)] + deeper(b, v).
  void fill_level(RowTable& t, const RowTable& deeper, Value ci, Value ci1,
                  Value ci2) {
    std::size_t abase = std::size_t(ci) << latbits_;
    std::size_t bbase = std::size_t(ci1) << latbits_;
    const std::uint32_t* vt3lo = k_.t3lo.data() + (std::size_t(ci2) << latbits_);
    const std::uint32_t* vt3hi = k_.t3hi.data() + (std::size_t(ci2) << latbits_);
    std::uint32_t lmask = s_.leftcells;
    for (std::uint32_t a = 0; a < latdom_; ++a) {
      std::size_t wa = abase + a;
      ColumnSums ta{k_.t3lo[wa], k_.t3hi[wa]};
      for (std::uint32_t b = 0; b < latdom_; ++b) {
        std::size_t wb = bbase + b;
        std::uint32_t wbw = static_cast<std::uint32_t>(wb);
        ColumnSums3 partial = add_sums(ta, {k_.p2lo[wb], k_.p2hi[wb]});
        std::uint16_t& slot = t.at(a, b);
        if (partial.b2 & wbw & lmask) {  // over-fed live cell for every v
          slot = kTop16;
          continue;
        }
        std::uint32_t vc = static_cast<std::uint32_t>(wa) & wbw & 1u;
        const std::uint16_t* gn = &deeper.v[std::size_t(b) << latbits_];
        std::uint32_t best = kTop16;
        for (std::uint32_t v = 0; v < latdom_; ++v) {
          std::uint32_t un = unstable_from_sums(partial, {vt3lo[v], vt3hi[v]},
                                                wbw, lmask) |
                             (vc & v);
          std::uint32_t g = gn[v];
          std::uint32_t cand = un == 0 ? g : kTop16;
          best = std::min(best, cand);
        }
        slot = best == kTop16
                   ? kTop16
                   : static_cast<std::uint16_t>(best + k_.dead[wb]);
      }
    }
  }

  // Bottom-row table standing in for g_{n+1}: entry (b, v) is row n's own
  // left cost below row b, Top when unstable.
  void fill_base(RowTable& t, Value cn1, Value cn) {
    std::size_t bbase = std::size_t(cn1) << latbits_;
    std::size_t vbase = std::size_t(cn) << latbits_;
    const std::uint32_t* vp2lo = k_.p2lo.data() + vbase;
    const std::uint32_t* vp2hi = k_.p2hi.data() + vbase;
    const std::uint8_t* vok = k_.edge_ok.data() + vbase;
    const std::uint16_t* vdead = k_.dead.data() + vbase;
    std::uint32_t lmask = s_.leftcells;
    std::uint32_t vw = static_cast<std::uint32_t>(vbase);
    for (std::uint32_t b = 0; b < latdom_; ++b) {
      std::size_t wb = bbase + b;
      ColumnSums3 partial = add_sums({k_.t3lo[wb], k_.t3hi[wb]}, ColumnSums{});
      std::uint16_t* out = &t.v[std::size_t(b) << latbits_];
      for (std::uint32_t v = 0; v < latdom_; ++v) {
        std::uint32_t un = unstable_from_sums(partial, {vp2lo[v], vp2hi[v]},
                                              vw + v, lmask) |
                           (std::uint32_t(vok[v]) ^ 1u);
        std::uint32_t dead = vdead[v];
        out[v] = static_cast<std::uint16_t>(un == 0 ? dead : kTop16);
      }
    }
  }

  // Leaf-side closure: min over (x1, x2) of row 1's left cost plus g_3.
  CostValue side_terminal(const RowTable& g3, const Value* c) const {
    std::size_t base1 = std::size_t(c[1]) << latbits_;
    const std::uint32_t* t3l = k_.t3lo.data() + (std::size_t(c[2]) << latbits_);
    const std::uint32_t* t3h = k_.t3hi.data() + (std::size_t(c[2]) << latbits_);
    std::uint32_t lmask = s_.leftcells;
    std::uint64_t best = kTopRaw;
    for (std::uint32_t a = 0; a < latdom_; ++a) {
      std::size_t w1 = base1 + a;
      if (!k_.edge_ok[w1]) continue;
      ColumnSums3 partial =
          add_sums(ColumnSums{}, {k_.p2lo[w1], k_.p2hi[w1]});
      std::uint32_t w1w = static_cast<std::uint32_t>(w1);
      const std::uint16_t* grow = &g3.v[std::size_t(a) << latbits_];
      std::uint32_t inner = kTop16;
      for (std::uint32_t b = 0; b < latdom_; ++b) {
        std::uint32_t un =
            unstable_from_sums(partial, {t3l[b], t3h[b]}, w1w, lmask);
        std::uint32_t g = grow[b];
        std::uint32_t cand = un == 0 ? g : kTop16;
        inner = std::min(inner, cand);
      }
      if (inner != kTop16)
        best = std::min(best, std::uint64_t(inner) + k_.dead[w1]);
    }
    return best == kTopRaw ? CostValue::top() : CostValue(best);
  }

  // One side of the look-ahead bound: min over (a, b) of g_{i+2}(a, b) +
  // h_{i-1}(row i boundary, row i+1 boundary). Only used for i >= 2; at
  // the leaf the block below is row 1 alone, closed by side_terminal.
  CostValue side_h_bound(const RowTable& g, int i, const Value* c,
                         const HTable& h) const {
    std::size_t off2 = std::size_t(c[i + 1]) << latbits_;
    std::uint64_t best = kTopRaw;
    for (std::uint32_t a = 0; a < latdom_; ++a) {
      std::size_t first = (std::size_t(c[i]) << latbits_) | a;
      const CostValue* hrow = h.v.data() + ((first << wbits_) + off2);
      const std::uint16_t* grow = &g.v[std::size_t(a) << latbits_];
      for (std::uint32_t b = 0; b < latdom_; ++b) {
        std::uint64_t hv = hrow[b].raw();
        std::uint32_t gv = grow[b];
        if (gv == kTop16 || hv == kTopRaw) continue;
        best = std::min(best, hv + gv);
      }
    }
    return best == kTopRaw ? CostValue::top() : CostValue(best);
  }

  static CostValue min_table(const RowTable& t) {
    std::uint16_t m = kTop16;
    for (std::uint16_t x : t.v) m = std::min(m, x);
    return cost_from_u16(m);
  }

  // Total middle-column cost over rows whose central neighborhood is fully
  // assigned (rows i+1..n, plus row 1 at the leaf). Zero for even boards.
  CostValue mid_sum(int i) const {
    if (s_.cw != 3) return CostValue::zero();
    CostValue total = CostValue::zero();
    if (i == 1) total += split_row_cost_mid(1, 0, central_[1], central_[2], s_);
    for (int j = i + 1; j <= n_; ++j)
      total += split_row_cost_mid(j, central_[j - 1], central_[j],
                                  j == n_ ? 0 : central_[j + 1], s_);
    return total;
  }

  void mirrored_centrals(int i, std::vector<Value>& out) const {
    out.assign(n_ + 1, 0);
    for (int j = i; j <= n_; ++j) out[j] = crev_[central_[j]];
  }

  void emit_audit(int i, CostValue lb_h, CostValue lb_plain) {
    NodeAudit a;
    a.n = n_;
    a.level = i;
    a.lat_bits = latbits_;
    a.central.assign(n_ + 1, -1);
    for (int j = i; j <= n_; ++j) a.central[j] = static_cast<int>(central_[j]);
    const RowTable& gl = gl_[i + 2];
    const RowTable& gm = grm_[i + 2];
    a.g_left = gl.v;
    a.g_right.resize(gm.v.size());
    for (std::uint32_t x = 0; x < latdom_; ++x)
      for (std::uint32_t y = 0; y < latdom_; ++y)
        a.g_right[(std::size_t(x) << latbits_) | y] =
            gm.at(reverse_bits(x, latbits_), reverse_bits(y, latbits_));
    a.lb_with_h = lb_h;
    a.lb_without_h = lb_plain;
    audit_(a);
  }

  void enter(int i, bool tie) {
    fill_level(gl_[i + 2], gl_[i + 3], central_[i], central_[i + 1],
               central_[i + 2]);
    CostValue mids = mid_sum(i);
    bool want_h = opt_.use_mb_lb || audit_ || i == 1;

    // The left term alone often proves the prune, in which case the
    // mirrored fill and the rest of the bound are skipped outright.
    if (want_h && i >= 2 && !audit_) {
      CostValue left_only =
          mids + side_h_bound(gl_[i + 2], i, central_.data(), ht_.left(i - 1));
      if (opt_.use_mb_lb && left_only >= ub_) return;
    }

    mirrored_centrals(i, mc_);
    fill_level(grm_[i + 2], grm_[i + 3], mc_[i], mc_[i + 1], mc_[i + 2]);

    CostValue lb_h = CostValue::top();
    if (want_h) {
      if (i == 1) {
        lb_h = mids + side_terminal(gl_[3], central_.data()) +
               side_terminal(grm_[3], mc_.data());
      } else {
        // The middle column's costs may ride with either side's look-ahead
        // family (the mid cost is reflection-invariant); both placements
        // are sound, so take the stronger.
        lb_h = mids +
               side_h_bound(gl_[i + 2], i, central_.data(), ht_.left(i - 1)) +
               side_h_bound(grm_[i + 2], i, mc_.data(), ht_.h[i - 1]);
        if (!ht_.hm.empty()) {
          CostValue swapped =
              mids +
              side_h_bound(gl_[i + 2], i, central_.data(), ht_.h[i - 1]) +
              side_h_bound(grm_[i + 2], i, mc_.data(), ht_.left(i - 1));
          lb_h = std::max(lb_h, swapped);
        }
      }
    }
    CostValue lb_plain = CostValue::top();
    if (!opt_.use_mb_lb || audit_)
      lb_plain = mids + min_table(gl_[i + 2]) + min_table(grm_[i + 2]);
    if (audit_) emit_audit(i, lb_h, lb_plain);

    if (i == 1) {
      if (lb_h < ub_) {
        best_ = reconstruct();
        has_best_ = true;
        ub_ = lb_h;
      }
      return;
    }
    CostValue lb = opt_.use_mb_lb ? lb_h : lb_plain;
    if (lb >= ub_) return;
    for (Value v = 0; v < cdom_; ++v) {
      bool tie_next;
      if (skip_by_symmetry(v, tie, tie_next)) continue;
      central_[i - 1] = v;
      enter(i - 1, tie_next);
    }
  }

  // Walks one side's stored tables forward, re-deriving argmins with the
  // scalar split cost (deliberately independent of the fill kernels).
  // Returns lateral values per row in this side's own orientation.
  std::vector<std::uint32_t> walk_side(const std::vector<RowTable>& g,
                                       const Value* c) const {
    std::vector<std::uint32_t> lat(n_ + 1, 0);
    CostValue best = CostValue::top();
    for (std::uint32_t a = 0; a < latdom_; ++a)
      for (std::uint32_t b = 0; b < latdom_; ++b) {
        CostValue v = split_row_cost_left(1, 0, 0, a, c[1], b, c[2], s_);
        if (v.is_top()) continue;
        v += cost_from_u16(g[3].at(a, b));
        if (v < best) {
          best = v;
          lat[1] = a;
          lat[2] = b;
        }
      }
    if (best.is_top()) throw std::logic_error("leaf reconstruction dead end");
    for (int k = 3; k <= n_; ++k) {
      CostValue pick = CostValue::top();
      std::uint32_t arg = 0;
      for (std::uint32_t v = 0; v < latdom_; ++v) {
        CostValue cost =
            split_row_cost_left(k - 1, lat[k - 2], c[k - 2], lat[k - 1],
                                c[k - 1], v, c[k], s_);
        if (cost.is_top()) continue;
        cost += cost_from_u16(g[k + 1].at(lat[k - 1], v));
        if (cost < pick) {
          pick = cost;
          arg = v;
        }
      }
      if (pick.is_top()) throw std::logic_error("leaf reconstruction dead end");
      lat[k] = arg;
    }
    return lat;
  }

  Pattern reconstruct() const {
    std::vector<std::uint32_t> left = walk_side(gl_, central_.data());
    std::vector<std::uint32_t> mirror = walk_side(grm_, mc_.data());
    std::vector<std::uint32_t> rows(n_);
    for (int j = 1; j <= n_; ++j) {
      SplitRow r{left[j], central_[j], reverse_bits(mirror[j], latbits_)};
      rows[j - 1] = combine_row(r, s_);
    }
    return Pattern(n_, std::move(rows));
  }

  int n_;
  SolveOptions opt_;
  AuditSink audit_;
  LeftKernel k_;
  SplitShape s_;
  int latbits_ = 0, wbits_ = 0;
  std::uint32_t latdom_ = 0;
  Value cdom_ = 0;
  HTables ht_;
  std::vector<RowTable> gl_, grm_;
  std::vector<Value> central_, crev_;
  std::vector<Value> mc_;
  CostValue ub_;
  Pattern best_{1};
  bool has_best_ = false;
};

}  // namespace detail

// Hybrid search: central columns by branch and bound, lateral columns by
// elimination. Boards below the split threshold fall back to the row
// solver, which is exact and instant there.
inline SlSolveResult solve_sl_hyb(int n, const SolveOptions& opt = {},
                                  AuditSink audit = {}) {
  if (n < 1) throw std::invalid_argument("board side must be positive");
  if (n < 4) return solve_sl_be(n);
  detail::HybSearch search(n, opt, std::move(audit));
  return search.run();
}

}  // namespace stillife
