#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace regkit {

// Exact rational with machine-word numerator and denominator. Always kept in
// lowest terms with a positive denominator. Intermediate products are formed
// in 128 bits; results that do not fit in 64 bits throw.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);  // NOLINT(google-explicit-constructor)

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  bool is_zero() const { return num_ == 0; }

  // Closest rational with denominator at most max_den (continued fractions).
  static Rational approximate(double x, std::int64_t max_den = 1000000);
  // Parses "3/10", "0.3", "7" or "1e-2" (the latter through approximate()).
  static Rational parse(std::string_view text);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  // ceil(r * k) and floor(r * k) for integer k >= 0, exact.
  std::int64_t ceil_times(std::int64_t k) const;
  std::int64_t floor_times(std::int64_t k) const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

Rational abs(const Rational& r);

// Compares a/b against r exactly, b > 0.
std::strong_ordering compare_fraction(__int128 a, __int128 b, const Rational& r);

}  // namespace regkit
