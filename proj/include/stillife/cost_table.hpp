#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "stillife/cost.hpp"

namespace stillife {

using VariableId = std::uint32_t;
using Value = std::uint32_t;

// Extensional cost function over an ordered scope. Entries are stored in
// mixed-radix order with the first scope variable most significant, so the
// linear index of a tuple (v0, v1, ..., vk) is ((v0*d1 + v1)*d2 + v2)...
class CostTable {
 public:
  // Empty scope: a single-entry constant.
  CostTable() : values_(1, CostValue::zero()) {}

  CostTable(std::vector<VariableId> scope, std::vector<Value> dims,
            CostValue fill = CostValue::zero())
      : scope_(std::move(scope)), dims_(std::move(dims)) {
    if (scope_.size() != dims_.size())
      throw std::invalid_argument("scope/dims length mismatch");
    std::size_t n = 1;
    for (Value d : dims_) {
      if (d == 0) throw std::invalid_argument("empty domain");
      n *= d;
    }
    values_.assign(n, fill);
  }

  static CostTable constant(CostValue c) {
    CostTable t;
    t.values_[0] = c;
    return t;
  }

  const std::vector<VariableId>& scope() const { return scope_; }
  const std::vector<Value>& dims() const { return dims_; }
  std::size_t size() const { return values_.size(); }

  CostValue& operator[](std::size_t i) { return values_[i]; }
  CostValue operator[](std::size_t i) const { return values_[i]; }

  int position_of(VariableId x) const {
    for (std::size_t k = 0; k < scope_.size(); ++k)
      if (scope_[k] == x) return static_cast<int>(k);
    return -1;
  }
  bool contains(VariableId x) const { return position_of(x) >= 0; }

  // Stride of the k-th scope position in the linear index.
  std::uint64_t stride(std::size_t k) const {
    std::uint64_t s = 1;
    for (std::size_t j = k + 1; j < dims_.size(); ++j) s *= dims_[j];
    return s;
  }

  std::size_t index_of(const std::vector<Value>& digits) const {
    if (digits.size() != scope_.size())
      throw std::invalid_argument("tuple arity mismatch");
    std::size_t idx = 0;
    for (std::size_t k = 0; k < digits.size(); ++k) {
      if (digits[k] >= dims_[k]) throw std::out_of_range("value out of domain");
      idx = idx * dims_[k] + digits[k];
    }
    return idx;
  }

  std::vector<Value> digits_of(std::size_t index) const {
    std::vector<Value> d(scope_.size());
    for (std::size_t k = scope_.size(); k-- > 0;) {
      d[k] = static_cast<Value>(index % dims_[k]);
      index /= dims_[k];
    }
    return d;
  }

  // Linear index of the entry selected by a full assignment addressed by
  // VariableId (the assignment may cover more variables than the scope).
  std::size_t index_under(const std::vector<Value>& assignment) const {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < scope_.size(); ++k) {
      Value v = assignment.at(scope_[k]);
      if (v >= dims_[k]) throw std::out_of_range("value out of domain");
      idx = idx * dims_[k] + v;
    }
    return idx;
  }

  CostValue evaluate(const std::vector<Value>& assignment) const {
    return values_[index_under(assignment)];
  }

 private:
  std::vector<VariableId> scope_;
  std::vector<Value> dims_;
  std::vector<CostValue> values_;
};

namespace detail {

// Odometer walk over `dims` calling fn(linear_index, digit_change_hook).
// Kept inline and simple; the generic module is not a hot path.
struct Strided {
  std::vector<std::uint64_t> stride;  // per result position, 0 if absent
  std::uint64_t pos = 0;
};

}  // namespace detail

// Pointwise saturating sum; scope is f's scope followed by g's new variables
// in g's order. Shared variables must agree on domain size.
inline CostTable sum(const CostTable& f, const CostTable& g) {
  std::vector<VariableId> scope = f.scope();
  std::vector<Value> dims = f.dims();
  for (std::size_t k = 0; k < g.scope().size(); ++k) {
    int p = -1;
    for (std::size_t j = 0; j < scope.size(); ++j)
      if (scope[j] == g.scope()[k]) { p = static_cast<int>(j); break; }
    if (p < 0) {
      scope.push_back(g.scope()[k]);
      dims.push_back(g.dims()[k]);
    } else if (dims[p] != g.dims()[k]) {
      throw std::invalid_argument("domain size mismatch in sum");
    }
  }
  CostTable r(scope, dims);
  std::vector<std::uint64_t> fs(scope.size(), 0), gs(scope.size(), 0);
  for (std::size_t k = 0; k < scope.size(); ++k) {
    int pf = f.position_of(scope[k]);
    int pg = g.position_of(scope[k]);
    if (pf >= 0) fs[k] = f.stride(pf);
    if (pg >= 0) gs[k] = g.stride(pg);
  }
  std::vector<Value> digit(scope.size(), 0);
  std::uint64_t fi = 0, gi = 0;
  for (std::size_t idx = 0;; ++idx) {
    r[idx] = f[fi] + g[gi];
    int k = static_cast<int>(scope.size()) - 1;
    for (; k >= 0; --k) {
      ++digit[k];
      fi += fs[k];
      gi += gs[k];
      if (digit[k] < dims[k]) break;
      fi -= fs[k] * dims[k];
      gi -= gs[k] * dims[k];
      digit[k] = 0;
    }
    if (k < 0) break;
  }
  return r;
}

// Best extension over x: scope loses x (order otherwise preserved), each
// entry is the min over x's domain.
inline CostTable eliminate(const CostTable& f, VariableId x) {
  int p = f.position_of(x);
  if (p < 0) throw std::invalid_argument("eliminate: variable not in scope");
  std::vector<VariableId> scope;
  std::vector<Value> dims;
  for (std::size_t k = 0; k < f.scope().size(); ++k) {
    if (static_cast<int>(k) == p) continue;
    scope.push_back(f.scope()[k]);
    dims.push_back(f.dims()[k]);
  }
  CostTable r(scope, dims, CostValue::top());
  std::vector<std::uint64_t> rs(f.scope().size(), 0);
  {
    std::size_t rk = 0;
    for (std::size_t k = 0; k < f.scope().size(); ++k) {
      if (static_cast<int>(k) == p) continue;
      rs[k] = r.stride(rk++);
    }
  }
  std::vector<Value> digit(f.scope().size(), 0);
  std::uint64_t ri = 0;
  for (std::size_t fi = 0; fi < f.size(); ++fi) {
    r[ri] = std::min(r[ri], f[fi]);
    int k = static_cast<int>(f.scope().size()) - 1;
    for (; k >= 0; --k) {
      ++digit[k];
      ri += rs[k];
      if (digit[k] < f.dims()[k]) break;
      ri -= rs[k] * f.dims()[k];
      digit[k] = 0;
    }
  }
  return r;
}

inline CostTable eliminate_all(CostTable f, const std::vector<VariableId>& xs) {
  for (VariableId x : xs) f = eliminate(f, x);
  return f;
}

// Fix x = v: scope loses x, entries are the matching slice.
inline CostTable instantiate(const CostTable& f, VariableId x, Value v) {
  int p = f.position_of(x);
  if (p < 0) throw std::invalid_argument("instantiate: variable not in scope");
  if (v >= f.dims()[p]) throw std::out_of_range("instantiate: value out of domain");
  std::vector<VariableId> scope;
  std::vector<Value> dims;
  for (std::size_t k = 0; k < f.scope().size(); ++k) {
    if (static_cast<int>(k) == p) continue;
    scope.push_back(f.scope()[k]);
    dims.push_back(f.dims()[k]);
  }
  CostTable r(scope, dims);
  std::vector<std::uint64_t> fs(scope.size(), 0);
  {
    std::size_t rk = 0;
    for (std::size_t k = 0; k < f.scope().size(); ++k) {
      if (static_cast<int>(k) == p) continue;
      fs[rk++] = f.stride(k);
    }
  }
  std::uint64_t base = f.stride(p) * v;
  std::vector<Value> digit(scope.size(), 0);
  std::uint64_t fi = base;
  for (std::size_t idx = 0;; ++idx) {
    r[idx] = f[fi];
    int k = static_cast<int>(scope.size()) - 1;
    for (; k >= 0; --k) {
      ++digit[k];
      fi += fs[k];
      if (digit[k] < dims[k]) break;
      fi -= fs[k] * dims[k];
      digit[k] = 0;
    }
    if (k < 0) break;
  }
  return r;
}

// Debug form: "scope: id,id,..." then one "index cost" line per entry,
// with "inf" for Top. Bit-exact across runs.
inline std::string dump(const CostTable& f) {
  std::ostringstream os;
  os << "scope:";
  for (std::size_t k = 0; k < f.scope().size(); ++k)
    os << (k == 0 ? " " : ",") << f.scope()[k];
  os << "\n";
  for (std::size_t i = 0; i < f.size(); ++i)
    os << i << " " << f[i].to_string() << "\n";
  return os.str();
}

}  // namespace stillife
