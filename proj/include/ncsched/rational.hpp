#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>

namespace ncsched {

/// Exact arbitrary-precision rational. Always canonical (lowest terms, positive denominator).
///
/// Beware of `auto` with gmpxx expressions: they are lazy templates that may dangle.
/// Spell out `Rational` on the left side of arithmetic.
using Rational = mpq_class;

/// Parses "num/den", "num", or "-num/den". Throws Error{Errc::Parse} on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// Always renders "num/den", including integers ("3/1").
std::string to_string(const Rational& value);

/// Decimal rendering rounded half away from zero to `precision` digits after the point.
std::string to_decimal(const Rational& value, int precision);

/// H_k = 1 + 1/2 + ... + 1/k; H_0 = 0.
Rational harmonic(std::size_t k);

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// A rational extended with +infinity, used by error measures and witnesses that
/// may be unbounded.
class ExtendedRational {
 public:
  ExtendedRational() = default;
  ExtendedRational(Rational value) : value_(std::move(value)) {}  // NOLINT(implicit)

  static ExtendedRational infinity() {
    ExtendedRational e;
    e.infinite_ = true;
    return e;
  }

  bool is_infinite() const { return infinite_; }
  /// Only meaningful when finite.
  const Rational& value() const { return value_; }

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
    if (a.infinite_) return std::strong_ordering::greater;
    if (b.infinite_) return std::strong_ordering::less;
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  Rational value_{0};
  bool infinite_ = false;
};

/// "inf" or "num/den".
std::string to_string(const ExtendedRational& value);
ExtendedRational parse_extended(std::string_view text);

}  // namespace ncsched
