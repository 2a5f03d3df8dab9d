#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "stillife/cost.hpp"

namespace stillife {

// Square board of cells, 1-based (row, column). Rows are stored as bit words
// with bit (j-1) holding column j, the convention shared by every solver.
class Pattern {
 public:
  explicit Pattern(int n) : n_(check_side(n)), rows_(n, 0) {}
  Pattern(int n, std::vector<std::uint32_t> rows)
      : n_(check_side(n)), rows_(std::move(rows)) {
    if (rows_.size() != static_cast<std::size_t>(n_))
      throw std::invalid_argument("row count mismatch");
    for (std::uint32_t r : rows_)
      if (n_ < 32 && (r >> n_) != 0)
        throw std::invalid_argument("row bits exceed side length");
  }

  int n() const { return n_; }
  bool alive(int i, int j) const { return (rows_[i - 1] >> (j - 1)) & 1u; }
  void set(int i, int j, bool v) {
    std::uint32_t bit = 1u << (j - 1);
    if (v)
      rows_[i - 1] |= bit;
    else
      rows_[i - 1] &= ~bit;
  }
  std::uint32_t row_bits(int i) const { return rows_[i - 1]; }

  int live_count() const {
    int c = 0;
    for (std::uint32_t r : rows_) c += std::popcount(r);
    return c;
  }

  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  static int check_side(int n) {
    if (n < 1 || n > 30) throw std::invalid_argument("side out of range");
    return n;
  }
  int n_;
  std::vector<std::uint32_t> rows_;
};

// Text form: n lines of n characters, '#' alive and '.' dead, each line
// newline-terminated. parse/print round-trip bit-exactly.
inline Pattern parse_pattern(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) throw std::invalid_argument("missing final newline");
  if (lines.empty()) throw std::invalid_argument("empty pattern text");
  int n = static_cast<int>(lines.size());
  if (n > 30) throw std::invalid_argument("side out of range");
  Pattern p(n);
  for (int i = 1; i <= n; ++i) {
    const std::string& ln = lines[i - 1];
    if (static_cast<int>(ln.size()) != n)
      throw std::invalid_argument("line " + std::to_string(i) + ": expected " +
                                  std::to_string(n) + " characters");
    for (int j = 1; j <= n; ++j) {
      char c = ln[j - 1];
      if (c != '#' && c != '.')
        throw std::invalid_argument("line " + std::to_string(i) +
                                    ": invalid character '" + std::string(1, c) + "'");
      p.set(i, j, c == '#');
    }
  }
  return p;
}

inline std::string print_pattern(const Pattern& p) {
  std::string out;
  for (int i = 1; i <= p.n(); ++i) {
    for (int j = 1; j <= p.n(); ++j) out += p.alive(i, j) ? '#' : '.';
    out += '\n';
  }
  return out;
}

// Alive cells among the <= 8 in-grid neighbors; outside counts as dead.
inline int live_neighbors(const Pattern& p, int i, int j) {
  int c = 0;
  for (int di = -1; di <= 1; ++di)
    for (int dj = -1; dj <= 1; ++dj) {
      if (di == 0 && dj == 0) continue;
      int r = i + di, s = j + dj;
      if (r >= 1 && r <= p.n() && s >= 1 && s <= p.n() && p.alive(r, s)) ++c;
    }
  return c;
}

// The three stability conditions: every alive cell has 2 or 3 live
// neighbors, no dead cell has exactly 3, and no three consecutive alive
// cells occur along any of the four boundary lines.
inline bool is_stable(const Pattern& p) {
  int n = p.n();
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      int c = live_neighbors(p, i, j);
      if (p.alive(i, j)) {
        if (c != 2 && c != 3) return false;
      } else if (c == 3) {
        return false;
      }
    }
  for (int k = 1; k + 2 <= n; ++k) {
    if (p.alive(1, k) && p.alive(1, k + 1) && p.alive(1, k + 2)) return false;
    if (p.alive(n, k) && p.alive(n, k + 1) && p.alive(n, k + 2)) return false;
    if (p.alive(k, 1) && p.alive(k + 1, 1) && p.alive(k + 2, 1)) return false;
    if (p.alive(k, n) && p.alive(k + 1, n) && p.alive(k + 2, n)) return false;
  }
  return true;
}

// Independent route: embed in a dead border, run one generation of the life
// rules, and compare. Must agree with is_stable on every pattern.
inline bool stability_cross_check(const Pattern& p) {
  int n = p.n();
  int m = n + 2;
  auto at = [&](int r, int s) -> bool {
    return r >= 1 && r <= n && s >= 1 && s <= n && p.alive(r, s);
  };
  for (int r = 0; r < m; ++r)
    for (int s = 0; s < m; ++s) {
      int cnt = 0;
      for (int dr = -1; dr <= 1; ++dr)
        for (int ds = -1; ds <= 1; ++ds) {
          if (dr == 0 && ds == 0) continue;
          if (at(r + dr, s + ds)) ++cnt;
        }
      bool cur = at(r, s);
      bool next = cur ? (cnt == 2 || cnt == 3) : (cnt == 3);
      if (next != cur) return false;
    }
  return true;
}

// Per-cell cost: Top when the cell breaks stability, including its share of
// the boundary conditions: a boundary cell that is the middle of a triple of
// consecutive living boundary cells. (Each triple has exactly one middle, so
// summing cell costs over a row reproduces the row cost; corner cells are
// never middles.) Otherwise 1 for dead, 0 for alive.
inline CostValue cell_cost(const Pattern& p, int i, int j) {
  int n = p.n();
  int c = live_neighbors(p, i, j);
  bool alive = p.alive(i, j);
  bool bad = alive ? (c != 2 && c != 3) : (c == 3);
  if (!bad && alive) {
    if ((i == 1 || i == n) && j > 1 && j < n && p.alive(i, j - 1) && p.alive(i, j + 1))
      bad = true;
    if ((j == 1 || j == n) && i > 1 && i < n && p.alive(i - 1, j) && p.alive(i + 1, j))
      bad = true;
  }
  if (bad) return CostValue::top();
  return CostValue(alive ? 0 : 1);
}

// Dead-cell count when stable, Top otherwise.
inline CostValue objective(const Pattern& p) {
  if (!is_stable(p)) return CostValue::top();
  return CostValue(static_cast<std::uint64_t>(p.n()) * p.n() - p.live_count());
}

// The eight symmetry images of the square: identity, three rotations, and
// the four reflections. All share the pattern's objective value.
inline std::array<Pattern, 8> dihedral_images(const Pattern& p) {
  int n = p.n();
  std::array<Pattern, 8> out{Pattern(n), Pattern(n), Pattern(n), Pattern(n),
                             Pattern(n), Pattern(n), Pattern(n), Pattern(n)};
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      bool v = p.alive(i, j);
      int ri = n + 1 - i, rj = n + 1 - j;
      out[0].set(i, j, v);    // identity
      out[1].set(j, ri, v);   // rotate 90
      out[2].set(ri, rj, v);  // rotate 180
      out[3].set(rj, i, v);   // rotate 270
      out[4].set(i, rj, v);   // horizontal flip
      out[5].set(ri, j, v);   // vertical flip
      out[6].set(j, i, v);    // transpose
      out[7].set(rj, ri, v);  // anti-transpose
    }
  return out;
}

}  // namespace stillife
