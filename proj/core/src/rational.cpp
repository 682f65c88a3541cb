#include "regkit/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "regkit/error.hpp"

namespace regkit {
namespace {

using i128 = __int128;

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational from128(i128 num, i128 den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  constexpr i128 lim = std::numeric_limits<std::int64_t>::max();
  if (num > lim || num < -lim || den > lim) throw DomainError("rational overflow");
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num_ = num;
  den_ = den;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::approximate(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw DomainError("cannot represent non-finite value as rational");
  bool neg = x < 0;
  double v = std::fabs(x);
  // Convergents p/q of the continued fraction of v.
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double rem = v;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(rem);
    if (a > 9e15) break;
    auto ai = static_cast<std::int64_t>(a);
    std::int64_t q2 = q0 + ai * q1;
    if (q2 > max_den) {
      // Best semiconvergent still within the bound.
      std::int64_t k = (max_den - q0) / q1;
      std::int64_t ps = p0 + k * p1, qs = q0 + k * q1;
      if (std::fabs(static_cast<double>(ps) / qs - v) < std::fabs(static_cast<double>(p1) / q1 - v)) {
        p1 = ps;
        q1 = qs;
      }
      break;
    }
    std::int64_t p2 = p0 + ai * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double frac = rem - a;
    if (frac < 1e-15 || std::fabs(static_cast<double>(p1) / q1 - v) < 1e-15 * std::max(1.0, v)) break;
    rem = 1.0 / frac;
  }
  return Rational(neg ? -p1 : p1, q1);
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw DomainError("empty rational");
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    }
    bool plain_decimal = s.find_first_of("eE") == std::string::npos;
    if (plain_decimal) {
      auto dot = s.find('.');
      if (dot == std::string::npos) return Rational(std::stoll(s));
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      std::size_t frac_len = s.size() - dot - 1;
      if (frac_len <= 15 && !digits.empty() && digits != "-") {
        std::int64_t den = 1;
        for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
        return Rational(std::stoll(digits), den);
      }
    }
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw DomainError("malformed number: " + s);
    return approximate(v);
  } catch (const std::logic_error&) {
    throw DomainError("malformed number: " + s);
  }
}

Rational operator+(const Rational& a, const Rational& b) {
  return from128(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                 static_cast<i128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return from128(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw DomainError("division by zero rational");
  return from128(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  i128 l = static_cast<i128>(a.num_) * b.den_;
  i128 r = static_cast<i128>(b.num_) * a.den_;
  return l <=> r;
}

std::int64_t Rational::ceil_times(std::int64_t k) const {
  i128 p = static_cast<i128>(num_) * k;
  i128 q = p / den_;
  if (q * den_ < p) ++q;
  return static_cast<std::int64_t>(q);
}

std::int64_t Rational::floor_times(std::int64_t k) const {
  i128 p = static_cast<i128>(num_) * k;
  i128 q = p / den_;
  if (q * den_ > p) --q;
  return static_cast<std::int64_t>(q);
}

Rational abs(const Rational& r) { return r.num() < 0 ? -r : r; }

std::strong_ordering compare_fraction(__int128 a, __int128 b, const Rational& r) {
  // a/b vs num/den  <=>  a*den vs num*b. Bounded inputs keep this in range.
  return a * r.den() <=> static_cast<__int128>(r.num()) * b;
}

}  // namespace regkit
