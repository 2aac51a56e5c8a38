#pragma once

#include <mpfr.h>

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

namespace zseries {

// Extended-precision real backed by an MPFR value. Every value carries its
// own binary precision; binary operations produce the larger precision of
// their operands and round to nearest. There is no process-wide default
// precision: values created from integers are exact at 64 bits and pick up
// the working precision as soon as they meet a context-derived operand.
class ExtReal {
 public:
  using Bits = mpfr_prec_t;
  static constexpr Bits kIntegerBits = 64;

  ExtReal() : ExtReal(0) {}

  template <std::signed_integral I>
  ExtReal(I v) {  // NOLINT(google-explicit-constructor): Eigen needs Scalar(0)
    mpfr_init2(value_, kIntegerBits);
    mpfr_set_sj(value_, static_cast<std::intmax_t>(v), MPFR_RNDN);
  }

  template <std::unsigned_integral U>
  ExtReal(U v) {  // NOLINT(google-explicit-constructor)
    mpfr_init2(value_, kIntegerBits);
    mpfr_set_uj(value_, static_cast<std::uintmax_t>(v), MPFR_RNDN);
  }

  // Exact: a double fits in 53 bits. Only used by Eigen internals and tests;
  // library inputs arrive as decimal strings.
  explicit ExtReal(double v) {
    mpfr_init2(value_, 53);
    mpfr_set_d(value_, v, MPFR_RNDN);
  }

  /// Zero at the given binary precision.
  static ExtReal zero_with_bits(Bits bits) {
    ExtReal r{Uninit{}, bits};
    mpfr_set_zero(r.value_, 1);
    return r;
  }

  ExtReal(const ExtReal& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }

  ExtReal(ExtReal&& other) noexcept {
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
  }

  ExtReal& operator=(const ExtReal& other) {
    if (this != &other) {
      mpfr_set_prec(value_, mpfr_get_prec(other.value_));
      mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
  }

  ExtReal& operator=(ExtReal&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
  }

  ~ExtReal() { mpfr_clear(value_); }

  Bits bits() const noexcept { return mpfr_get_prec(value_); }

  /// Same value rounded (or exactly widened) to `bits`.
  ExtReal with_bits(Bits bits) const {
    ExtReal r{Uninit{}, bits};
    mpfr_set(r.value_, value_, MPFR_RNDN);
    return r;
  }

  int sign() const noexcept { return mpfr_sgn(value_); }
  bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
  bool is_nan() const noexcept { return mpfr_nan_p(value_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(value_) != 0; }
  bool is_integer() const noexcept { return mpfr_integer_p(value_) != 0; }

  /// Diagnostic conversion; never used on a module boundary.
  double to_double() const noexcept { return mpfr_get_d(value_, MPFR_RNDN); }

  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_ptr get() noexcept { return value_; }

  ExtReal& operator+=(const ExtReal& rhs) { return apply(rhs, &mpfr_add); }
  ExtReal& operator-=(const ExtReal& rhs) { return apply(rhs, &mpfr_sub); }
  ExtReal& operator*=(const ExtReal& rhs) { return apply(rhs, &mpfr_mul); }
  ExtReal& operator/=(const ExtReal& rhs) { return apply(rhs, &mpfr_div); }

  ExtReal operator-() const {
    ExtReal r{Uninit{}, bits()};
    mpfr_neg(r.value_, value_, MPFR_RNDN);
    return r;
  }
  ExtReal operator+() const { return *this; }

  friend ExtReal operator+(const ExtReal& a, const ExtReal& b) { return binary(a, b, &mpfr_add); }
  friend ExtReal operator-(const ExtReal& a, const ExtReal& b) { return binary(a, b, &mpfr_sub); }
  friend ExtReal operator*(const ExtReal& a, const ExtReal& b) { return binary(a, b, &mpfr_mul); }
  friend ExtReal operator/(const ExtReal& a, const ExtReal& b) { return binary(a, b, &mpfr_div); }

  friend bool operator==(const ExtReal& a, const ExtReal& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend bool operator<(const ExtReal& a, const ExtReal& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
  friend bool operator<=(const ExtReal& a, const ExtReal& b) { return mpfr_lessequal_p(a.value_, b.value_) != 0; }
  friend bool operator>(const ExtReal& a, const ExtReal& b) { return mpfr_greater_p(a.value_, b.value_) != 0; }
  friend bool operator>=(const ExtReal& a, const ExtReal& b) { return mpfr_greaterequal_p(a.value_, b.value_) != 0; }

  friend ExtReal abs(const ExtReal& x) { return unary(x, &mpfr_abs); }
  friend ExtReal sqrt(const ExtReal& x) { return unary(x, &mpfr_sqrt); }
  friend ExtReal log(const ExtReal& x) { return unary(x, &mpfr_log); }
  friend ExtReal exp(const ExtReal& x) { return unary(x, &mpfr_exp); }
  friend ExtReal abs2(const ExtReal& x) { return x * x; }
  friend ExtReal pow(const ExtReal& x, const ExtReal& y) { return binary(x, y, &mpfr_pow); }
  friend ExtReal pow(const ExtReal& x, long n) {
    ExtReal r{Uninit{}, x.bits()};
    mpfr_pow_si(r.value_, x.value_, n, MPFR_RNDN);
    return r;
  }
  friend bool isfinite(const ExtReal& x) { return x.is_finite(); }
  friend bool isnan(const ExtReal& x) { return x.is_nan(); }
  friend bool isinf(const ExtReal& x) { return mpfr_inf_p(x.value_) != 0; }

  friend void swap(ExtReal& a, ExtReal& b) noexcept { mpfr_swap(a.value_, b.value_); }

  /// Decimal output at the precision carried by the value.
  friend std::ostream& operator<<(std::ostream& os, const ExtReal& x) {
    char* buf = nullptr;
    const int digits = static_cast<int>(static_cast<double>(x.bits()) * 0.30102999566398120) + 1;
    if (mpfr_asprintf(&buf, "%.*Rg", digits, x.value_) < 0) return os << "<mpfr format error>";
    os << buf;
    mpfr_free_str(buf);
    return os;
  }

  /// 2^exponent at the given precision (exact).
  static ExtReal power_of_two(long exponent, Bits bits) {
    ExtReal r{Uninit{}, bits};
    mpfr_set_ui_2exp(r.value_, 1, exponent, MPFR_RNDN);
    return r;
  }

  static ExtReal infinity(Bits bits) {
    ExtReal r{Uninit{}, bits};
    mpfr_set_inf(r.value_, 1);
    return r;
  }

  static ExtReal nan(Bits bits) {
    ExtReal r{Uninit{}, bits};
    mpfr_set_nan(r.value_);
    return r;
  }

 private:
  struct Uninit {};
  ExtReal(Uninit, Bits bits) { mpfr_init2(value_, bits); }

  using BinaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
  using UnaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

  static ExtReal binary(const ExtReal& a, const ExtReal& b, BinaryFn fn) {
    ExtReal r{Uninit{}, std::max(a.bits(), b.bits())};
    fn(r.value_, a.value_, b.value_, MPFR_RNDN);
    return r;
  }

  static ExtReal unary(const ExtReal& a, UnaryFn fn) {
    ExtReal r{Uninit{}, a.bits()};
    fn(r.value_, a.value_, MPFR_RNDN);
    return r;
  }

  ExtReal& apply(const ExtReal& rhs, BinaryFn fn) {
    const Bits target = std::max(bits(), rhs.bits());
    if (target != bits()) mpfr_prec_round(value_, target, MPFR_RNDN);
    fn(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
  }

  mpfr_t value_;
};

}  // namespace zseries
