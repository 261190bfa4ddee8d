#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "ribbonzeta/errors.hpp"

namespace ribbonzeta {

// Minimal exact rational on int64. Edge lengths in input files may be given
// as p/q; the polynomial route needs them exactly.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }
  explicit Rational(std::int64_t n) : num(n), den(1) {}

  void normalize() {
    require(den != 0, ErrorCode::InvalidArgument, "rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  bool positive() const { return num > 0; }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
};

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  return a / std::gcd(a, b) * b;
}

// Parses "p", "p/q" or a plain decimal such as "0.25" (decimals are converted
// exactly via powers of ten).
inline Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      std::int64_t p = std::stoll(text.substr(0, slash));
      std::int64_t q = std::stoll(text.substr(slash + 1));
      return Rational(p, q);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(std::stoll(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac_digits = text.size() - dot - 1;
    require(frac_digits <= 15, ErrorCode::ParseError, "too many decimal digits: " + text);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac_digits; ++i) den *= 10;
    return Rational(std::stoll(digits), den);
  } catch (const std::invalid_argument&) {
    fail(ErrorCode::ParseError, "bad rational: " + text);
  } catch (const std::out_of_range&) {
    fail(ErrorCode::ParseError, "rational out of range: " + text);
  }
}

}  // namespace ribbonzeta
