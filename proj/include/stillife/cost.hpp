#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace stillife {

// Non-negative integer cost under min-plus combination. The maximal
// representable value is reserved as the infeasibility sentinel (Top);
// addition saturates onto it, so Top absorbs and finite sums never wrap.
class CostValue {
 public:
  constexpr CostValue() = default;
  constexpr CostValue(std::uint64_t v) : raw_(v) {}

  static constexpr CostValue top() { return CostValue(kTop); }
  static constexpr CostValue zero() { return CostValue(0); }

  constexpr bool is_top() const { return raw_ == kTop; }
  constexpr std::uint64_t raw() const { return raw_; }

  // Finite value accessor; callers must check is_top() first.
  constexpr std::uint64_t finite() const { return raw_; }

  friend constexpr CostValue operator+(CostValue a, CostValue b) {
    // Saturate on wrap and on either operand being Top. A finite sum that
    // lands exactly on the sentinel also saturates; still-life costs are
    // bounded by n*n, so this never occurs in practice (headroom invariant).
    if (a.raw_ >= kTop - b.raw_) return top();
    return CostValue(a.raw_ + b.raw_);
  }
  CostValue& operator+=(CostValue o) { return *this = *this + o; }

  friend constexpr bool operator==(CostValue a, CostValue b) = default;
  friend constexpr auto operator<=>(CostValue a, CostValue b) {
    return a.raw_ <=> b.raw_;  // Top is the maximum, so min() ignores it
  }

  std::string to_string() const {
    return is_top() ? "inf" : std::to_string(raw_);
  }

 private:
  static constexpr std::uint64_t kTop = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t raw_ = 0;
};

// Exact solution count. 64-bit with overflow detection: arithmetic throws
// instead of silently wrapping.
class SolutionCount {
 public:
  constexpr SolutionCount() = default;
  constexpr explicit SolutionCount(std::uint64_t v) : v_(v) {}

  constexpr std::uint64_t value() const { return v_; }

  SolutionCount& operator+=(SolutionCount o) {
    if (__builtin_add_overflow(v_, o.v_, &v_))
      throw std::overflow_error("solution count exceeds 64 bits");
    return *this;
  }
  SolutionCount& operator*=(SolutionCount o) {
    if (__builtin_mul_overflow(v_, o.v_, &v_))
      throw std::overflow_error("solution count exceeds 64 bits");
    return *this;
  }
  friend SolutionCount operator+(SolutionCount a, SolutionCount b) { return a += b; }
  friend SolutionCount operator*(SolutionCount a, SolutionCount b) { return a *= b; }
  friend constexpr bool operator==(SolutionCount a, SolutionCount b) = default;

 private:
  std::uint64_t v_ = 0;
};

// Compact 16-bit cost encoding used by the dense solver tables.
inline constexpr std::uint16_t kTop16 = 0xFFFF;

inline CostValue cost_from_u16(std::uint16_t v) {
  return v == kTop16 ? CostValue::top() : CostValue(v);
}

}  // namespace stillife
