#pragma once

// Test-only reference implementations. Nothing here calls into the library's
// decimal or series code paths: decimals are scaled cpp_int values, sums are
// exact rationals, half-integer powers go through raw MPFR sqrt + pow_ui.

#include <mpfr.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

inline cpp_int pow10(int k) {
  cpp_int r = 1;
  for (int i = 0; i < k; ++i) r *= 10;
  return r;
}

/// units * 10^-scale, exact.
struct Decimal {
  cpp_int units = 0;
  int scale = 0;

  /// Plain notation only: [-]digits[.digits].
  static Decimal parse(const std::string& text) {
    Decimal d;
    bool neg = false;
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
    bool frac = false;
    for (; i < text.size(); ++i) {
      const char c = text[i];
      if (c == '.') {
        frac = true;
        continue;
      }
      if (c < '0' || c > '9') throw std::invalid_argument("oracle: bad decimal " + text);
      d.units = d.units * 10 + (c - '0');
      if (frac) ++d.scale;
    }
    if (neg) d.units = -d.units;
    return d;
  }

  Decimal at_scale(int s) const {
    if (s < scale) throw std::logic_error("oracle: lossy rescale");
    return {units * pow10(s - scale), s};
  }

  friend Decimal operator+(const Decimal& a, const Decimal& b) {
    const int s = std::max(a.scale, b.scale);
    return {a.at_scale(s).units + b.at_scale(s).units, s};
  }
  friend Decimal operator-(const Decimal& a, const Decimal& b) {
    const int s = std::max(a.scale, b.scale);
    return {a.at_scale(s).units - b.at_scale(s).units, s};
  }
  friend Decimal operator*(const Decimal& a, const Decimal& b) {
    return {a.units * b.units, a.scale + b.scale};
  }
  friend bool operator==(const Decimal& a, const Decimal& b) {
    const int s = std::max(a.scale, b.scale);
    return a.at_scale(s).units == b.at_scale(s).units;
  }

  /// Reduce to d fractional digits: half away from zero or toward zero.
  Decimal rounded(int d, bool half_away) const {
    if (d >= scale) return at_scale(d);
    const cpp_int div = pow10(scale - d);
    const bool neg = units < 0;
    const cpp_int mag = neg ? cpp_int(-units) : units;
    cpp_int q = mag / div;
    const cpp_int r = mag % div;
    if (half_away && 2 * r >= div) ++q;
    return {neg ? cpp_int(-q) : q, d};
  }

  std::string str() const {
    const bool neg = units < 0;
    std::string digits = (neg ? cpp_int(-units) : units).str();
    if (static_cast<int>(digits.size()) <= scale) digits.insert(0, scale + 1 - digits.size(), '0');
    std::string out;
    if (neg && units != 0) out = "-";
    out += digits.substr(0, digits.size() - scale);
    if (scale > 0) out += "." + digits.substr(digits.size() - scale);
    return out;
  }
};

/// Fixed-point string of an exact decimal at d places.
inline std::string fixed(const std::string& text, int d, bool half_away) {
  return Decimal::parse(text).rounded(d, half_away).str();
}

/// Exact rational from plain decimal text.
inline cpp_rational rational(const std::string& text) {
  const Decimal d = Decimal::parse(text);
  return cpp_rational(d.units, pow10(d.scale));
}

/// Truncated decimal expansion of a rational at d places.
inline std::string rational_fixed(const cpp_rational& q, int d, bool half_away) {
  const cpp_int num = boost::multiprecision::numerator(q) * pow10(d);
  const cpp_int den = boost::multiprecision::denominator(q);
  const bool neg = num < 0;
  const cpp_int mag = neg ? cpp_int(-num) : num;
  cpp_int units = mag / den;
  if (half_away && 2 * (mag % den) >= den) ++units;
  return Decimal{neg ? cpp_int(-units) : units, d}.str();
}

/// x^(two_k/2) for x >= 0, two_k >= 0, via sqrt then integer power at `bits`.
inline std::string half_power(const std::string& x, unsigned two_k, mpfr_prec_t bits, int sig) {
  mpfr_t v, r;
  mpfr_init2(v, bits);
  mpfr_init2(r, bits);
  mpfr_set_str(v, x.c_str(), 10, MPFR_RNDN);
  mpfr_sqrt(r, v, MPFR_RNDN);
  mpfr_pow_ui(r, r, two_k, MPFR_RNDN);
  mpfr_exp_t e = 0;
  char* s = mpfr_get_str(nullptr, &e, 10, static_cast<std::size_t>(sig), r, MPFR_RNDN);
  std::string digits(s);
  mpfr_free_str(s);
  mpfr_clear(v);
  mpfr_clear(r);
  return "0." + digits + "e" + std::to_string(e);
}

/// Random plain decimal with up to `int_digits` integer and `frac_digits`
/// fractional digits.
inline std::string random_decimal(std::mt19937_64& rng, int int_digits, int frac_digits) {
  std::uniform_int_distribution<int> digit(0, 9);
  std::uniform_int_distribution<int> ilen(1, std::max(1, int_digits));
  std::uniform_int_distribution<int> flen(0, frac_digits);
  std::string s = (rng() & 1) ? "-" : "";
  const int il = ilen(rng);
  for (int i = 0; i < il; ++i) s.push_back(static_cast<char>('0' + digit(rng)));
  const int fl = flen(rng);
  if (fl > 0) {
    s.push_back('.');
    for (int i = 0; i < fl; ++i) s.push_back(static_cast<char>('0' + digit(rng)));
  }
  return s;
}

}  // namespace oracle
