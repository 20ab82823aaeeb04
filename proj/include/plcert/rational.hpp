#ifndef PLCERT_RATIONAL_HPP
#define PLCERT_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace plcert {

/// Exact rational num/den in lowest terms with den > 0. Used for slopes
/// and multiplicity thresholds; comparisons never touch floating point.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Rational() = default;
  constexpr Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  friend constexpr bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend constexpr std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return a.num * b.den <=> b.num * a.den;
  }
  friend constexpr Rational operator-(const Rational& a) { return Rational(-a.num, a.den); }

  std::string str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }
};

}  // namespace plcert

#endif  // PLCERT_RATIONAL_HPP
