#pragma once

#include <cmath>
#include <limits>
#include <ostream>

namespace symdist {

/// A real number or +infinity. Infinity is a flag, never a large float.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  constexpr ExtReal(double v) : value_(v) {}  // NOLINT(google-explicit-constructor)

  static constexpr ExtReal infinity() {
    ExtReal r;
    r.inf_ = true;
    return r;
  }

  constexpr bool is_inf() const { return inf_; }
  constexpr bool is_finite() const { return !inf_; }

  /// Finite value, or +inf as a double.
  double value() const { return inf_ ? std::numeric_limits<double>::infinity() : value_; }

  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.value_ == b.value_);
  }
  friend bool operator<(const ExtReal& a, const ExtReal& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator<=(const ExtReal& a, const ExtReal& b) { return !(b < a); }

  friend ExtReal operator+(const ExtReal& a, const ExtReal& b) {
    if (a.inf_ || b.inf_) return infinity();
    return ExtReal(a.value_ + b.value_);
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtReal& x) {
    if (x.inf_) return os << "inf";
    return os << x.value_;
  }

 private:
  double value_ = 0.0;
  bool inf_ = false;
};

inline ExtReal max(const ExtReal& a, const ExtReal& b) { return a < b ? b : a; }

/// log2 on [0, inf], with log2(inf) = inf. Zero maps to -inf as a plain double.
inline ExtReal log2_ext(const ExtReal& x) {
  if (x.is_inf()) return ExtReal::infinity();
  return ExtReal(std::log2(x.value()));
}

}  // namespace symdist
