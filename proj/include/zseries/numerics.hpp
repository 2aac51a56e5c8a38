#pragma once

#include <string>
#include <string_view>

#include "zseries/eigen_support.hpp"
#include "zseries/errors.hpp"
#include "zseries/ext_real.hpp"

namespace zseries {

/// Decimal rounding applied when a value is printed at a fixed number of
/// fractional digits.
enum class Rounding {
  half_away_from_zero,  // "rounded"
  truncate,             // "truncated"
};

std::string_view to_string(Rounding mode);
/// Accepts "rounded"/"truncated" (and the enum spellings).
Rounding parse_rounding(std::string_view text);

/// Working precision: `digits` significant decimal digits. Immutable.
///
/// Values are carried with `guard_bits` extra binary digits beyond
/// ceil(digits * log2(10)); printing snapshots a value at `digits`
/// significant decimals, so the guard absorbs accumulated rounding noise
/// and exact decimal inputs survive a parse/print cycle digit for digit.
class PrecisionContext {
 public:
  static constexpr int kMinDigits = 30;
  static constexpr int kDefaultDigits = 40;
  static constexpr ExtReal::Bits kGuardBits = 16;

  explicit PrecisionContext(int digits = kDefaultDigits,
                            Rounding rounding = Rounding::half_away_from_zero);

  int digits() const noexcept { return digits_; }
  Rounding rounding() const noexcept { return rounding_; }
  ExtReal::Bits bits() const noexcept { return bits_; }

  ExtReal zero() const { return ExtReal::zero_with_bits(bits_); }
  ExtReal integer(long long v) const { return ExtReal(v).with_bits(bits_); }
  /// Bring any value (e.g. an exact integer literal) to working precision.
  ExtReal widen(const ExtReal& x) const { return x.with_bits(bits_); }

  /// Binary precision used for a given number of significant digits.
  static ExtReal::Bits bits_for_digits(int digits);
  /// Inverse of bits_for_digits: significant decimals a value of the given
  /// precision is printed with.
  static int digits_for_bits(ExtReal::Bits bits);

  friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;

 private:
  int digits_;
  Rounding rounding_;
  ExtReal::Bits bits_;
};

/// Exact decimal number as written: value = (-1)^negative * mantissa * 10^exponent.
/// The mantissa is a digit string without leading zeros ("0" for zero).
class DecimalString {
 public:
  /// Accepts [+-]? digits [. digits] [(e|E) [+-]? digits]. At least one
  /// mantissa digit is required. Throws ParseError with the 1-based column
  /// of the first offending character.
  static DecimalString parse(std::string_view text);

  /// Exact decimal expansion of a binary value, rounded to nearest at
  /// `significant` digits.
  static DecimalString from_ext(const ExtReal& x, int significant);

  bool negative() const noexcept { return negative_; }
  const std::string& mantissa() const noexcept { return mantissa_; }
  long exponent() const noexcept { return exponent_; }
  bool is_zero() const noexcept { return mantissa_ == "0"; }

  /// Fractional digits present in the written form. For scientific input
  /// "mEk" this is the fractional digit count of the exact value,
  /// max(0, digits after the point in m - k).
  int written_fraction_digits() const noexcept { return written_fraction_digits_; }

  /// Fractional digits needed to write the value exactly (trailing zeros
  /// removed).
  int exact_fraction_digits() const;

  /// Fixed-point rendering with exactly `d` fractional digits. A result whose
  /// digits are all zero carries no sign.
  std::string to_fixed(int d, Rounding mode) const;

  /// Value at working precision, correctly rounded.
  ExtReal to_ext(const PrecisionContext& ctx) const;

  /// Numeric equality (ignores trailing zeros, exponent form and zero sign).
  friend bool same_value(const DecimalString& a, const DecimalString& b);

 private:
  bool negative_ = false;
  std::string mantissa_ = "0";
  long exponent_ = 0;
  int written_fraction_digits_ = 0;
};

/// Exact decimal text to working precision.
ExtReal parse_decimal(std::string_view text, const PrecisionContext& ctx);

/// Fixed-point string with exactly `d` fractional digits. The value is first
/// taken at its working precision (PrecisionContext::digits_for_bits of its
/// binary precision), then rounded half away from zero or truncated at `d`.
std::string format_fixed(const ExtReal& x, int d, Rounding mode);

/// Shortest plain decimal string that shows `x` at its working precision
/// (no exponent, trailing zeros removed).
std::string format_working(const ExtReal& x);

/// Scientific rendering "m.mmmE±k" with `significant` digits.
std::string format_scientific(const ExtReal& x, int significant);

/// True when a and b print identically at `digits` significant decimals.
bool same_at_digits(const ExtReal& a, const ExtReal& b, int digits);

/// x^(two_k/2). Odd two_k needs x >= 0; x = 0 needs two_k >= 0.
ExtReal pow_half_integer(const ExtReal& x, int two_k);

}  // namespace zseries
