#pragma once

#include <cmath>
#include <limits>
#include <ostream>

namespace infobounds {

/// A real number or +infinity. Divergences and binary KL legitimately reach
/// +inf on mass mismatches; the tag keeps that explicit instead of relying on
/// IEEE infinities leaking through arithmetic.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  // NOLINTNEXTLINE(google-explicit-constructor): finite values convert freely
  constexpr ExtReal(double value)
      : value_(value), infinite_(value == std::numeric_limits<double>::infinity()) {}

  static constexpr ExtReal infinity() {
    ExtReal r;
    r.infinite_ = true;
    return r;
  }

  constexpr bool is_finite() const { return !infinite_; }
  constexpr bool is_infinite() const { return infinite_; }

  /// The finite value, or +inf as a double.
  constexpr double value() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  friend constexpr ExtReal operator+(ExtReal a, ExtReal b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return ExtReal(a.value_ + b.value_);
  }
  ExtReal& operator+=(ExtReal other) { return *this = *this + other; }

  /// Scaling by a non-negative weight; 0 * inf is taken as 0 (measure-theoretic
  /// convention for terms carrying zero probability).
  friend constexpr ExtReal operator*(double weight, ExtReal a) {
    if (a.infinite_) return weight == 0.0 ? ExtReal(0.0) : infinity();
    return ExtReal(weight * a.value_);
  }

  friend constexpr bool operator<(ExtReal a, ExtReal b) { return a.value() < b.value(); }
  friend constexpr bool operator<=(ExtReal a, ExtReal b) { return a.value() <= b.value(); }
  friend constexpr bool operator>(ExtReal a, ExtReal b) { return b < a; }
  friend constexpr bool operator>=(ExtReal a, ExtReal b) { return b <= a; }
  friend constexpr bool operator==(ExtReal a, ExtReal b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }

  friend std::ostream& operator<<(std::ostream& os, ExtReal a) {
    if (a.infinite_) return os << "+inf";
    return os << a.value_;
  }

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

}  // namespace infobounds
