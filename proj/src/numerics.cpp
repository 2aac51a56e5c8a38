#include "zseries/numerics.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <memory>

namespace zseries {

namespace {

constexpr long kMaxDecimalExponent = 100000;

bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::string strip_leading_zeros(std::string digits) {
  const auto first = digits.find_first_not_of('0');
  if (first == std::string::npos) return "0";
  digits.erase(0, first);
  return digits;
}

// Adds one unit in the last place of a nonnegative digit string.
void increment(std::string& digits) {
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    if (*it != '9') {
      ++*it;
      return;
    }
    *it = '0';
  }
  digits.insert(digits.begin(), '1');
}

struct MpfrString {
  char* text = nullptr;
  ~MpfrString() {
    if (text != nullptr) mpfr_free_str(text);
  }
};

}  // namespace

std::string_view to_string(Rounding mode) {
  return mode == Rounding::half_away_from_zero ? "rounded" : "truncated";
}

Rounding parse_rounding(std::string_view text) {
  if (text == "rounded" || text == "half-away-from-zero" || text == "half_away_from_zero") {
    return Rounding::half_away_from_zero;
  }
  if (text == "truncated" || text == "truncate") return Rounding::truncate;
  throw ParseError("unknown rounding mode '" + std::string(text) + "'", 0, 1);
}

PrecisionContext::PrecisionContext(int digits, Rounding rounding)
    : digits_(digits), rounding_(rounding), bits_(0) {
  if (digits < kMinDigits) {
    throw DomainError("working precision must be at least " + std::to_string(kMinDigits) +
                      " digits, got " + std::to_string(digits));
  }
  bits_ = bits_for_digits(digits);
}

ExtReal::Bits PrecisionContext::bits_for_digits(int digits) {
  constexpr long double kLog2Of10 = 3.32192809488736234787031942948939L;
  return static_cast<ExtReal::Bits>(std::ceil(static_cast<long double>(digits) * kLog2Of10)) +
         kGuardBits;
}

int PrecisionContext::digits_for_bits(ExtReal::Bits bits) {
  constexpr long double kLog10Of2 = 0.301029995663981195213738894724493L;
  const long double usable = static_cast<long double>(bits - kGuardBits);
  return std::max(1, static_cast<int>(std::floor(usable * kLog10Of2 + 1e-12L)));
}

DecimalString DecimalString::parse(std::string_view text) {
  auto fail = [&](std::size_t pos, const std::string& why) -> ParseError {
    std::string shown(text);
    return ParseError("malformed decimal '" + shown + "' at position " + std::to_string(pos + 1) +
                          ": " + why,
                      0, static_cast<int>(pos + 1));
  };

  std::size_t pos = 0;
  DecimalString out;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    out.negative_ = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  std::size_t int_count = 0;
  while (pos < text.size() && is_digit(text[pos])) {
    digits.push_back(text[pos++]);
    ++int_count;
  }
  std::size_t frac_count = 0;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && is_digit(text[pos])) {
      digits.push_back(text[pos++]);
      ++frac_count;
    }
  }
  if (int_count + frac_count == 0) {
    throw fail(pos, pos < text.size() ? "expected a digit" : "no digits");
  }
  long exp10 = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool exp_negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      exp_negative = text[pos] == '-';
      ++pos;
    }
    if (pos >= text.size() || !is_digit(text[pos])) throw fail(pos, "expected exponent digits");
    while (pos < text.size() && is_digit(text[pos])) {
      exp10 = exp10 * 10 + (text[pos] - '0');
      if (exp10 > kMaxDecimalExponent) throw fail(pos, "exponent out of range");
      ++pos;
    }
    if (exp_negative) exp10 = -exp10;
  }
  if (pos != text.size()) throw fail(pos, "unexpected character");

  out.mantissa_ = strip_leading_zeros(std::move(digits));
  out.exponent_ = exp10 - static_cast<long>(frac_count);
  out.written_fraction_digits_ = static_cast<int>(std::max(0L, static_cast<long>(frac_count) - exp10));
  if (out.mantissa_ == "0") out.exponent_ = 0;
  return out;
}

DecimalString DecimalString::from_ext(const ExtReal& x, int significant) {
  if (!x.is_finite()) throw DomainError("cannot render a non-finite value as a decimal");
  DecimalString out;
  if (x.is_zero()) return out;
  mpfr_exp_t exp10 = 0;
  MpfrString s;
  s.text = mpfr_get_str(nullptr, &exp10, 10, static_cast<std::size_t>(significant), x.get(), MPFR_RNDN);
  std::string digits(s.text);
  if (!digits.empty() && digits.front() == '-') {
    out.negative_ = true;
    digits.erase(0, 1);
  }
  out.exponent_ = static_cast<long>(exp10) - static_cast<long>(digits.size());
  out.mantissa_ = strip_leading_zeros(std::move(digits));
  out.written_fraction_digits_ = static_cast<int>(std::max(0L, -out.exponent_));
  return out;
}

int DecimalString::exact_fraction_digits() const {
  if (is_zero()) return 0;
  const auto last = mantissa_.find_last_not_of('0');
  const long trailing = static_cast<long>(mantissa_.size() - 1 - last);
  return static_cast<int>(std::max(0L, -(exponent_ + trailing)));
}

std::string DecimalString::to_fixed(int d, Rounding mode) const {
  const long shift = exponent_ + d;
  std::string scaled;  // |value| * 10^d, rounded to an integer
  if (is_zero()) {
    scaled = "0";
  } else if (shift >= 0) {
    scaled = mantissa_ + std::string(static_cast<std::size_t>(shift), '0');
  } else {
    const long cut = static_cast<long>(mantissa_.size()) + shift;
    char first_dropped = '0';
    if (cut > 0) {
      scaled = mantissa_.substr(0, static_cast<std::size_t>(cut));
      first_dropped = mantissa_[static_cast<std::size_t>(cut)];
    } else {
      scaled = "0";
      if (cut == 0) first_dropped = mantissa_.front();
    }
    if (mode == Rounding::half_away_from_zero && first_dropped >= '5') increment(scaled);
    scaled = strip_leading_zeros(std::move(scaled));
  }

  if (scaled.size() <= static_cast<std::size_t>(d)) {
    scaled.insert(0, static_cast<std::size_t>(d) + 1 - scaled.size(), '0');
  }
  const bool all_zero = scaled.find_first_not_of('0') == std::string::npos;
  std::string out;
  if (negative_ && !all_zero) out.push_back('-');
  const std::size_t int_len = scaled.size() - static_cast<std::size_t>(d);
  out.append(scaled, 0, int_len);
  if (d > 0) {
    out.push_back('.');
    out.append(scaled, int_len, std::string::npos);
  }
  return out;
}

ExtReal DecimalString::to_ext(const PrecisionContext& ctx) const {
  ExtReal out = ctx.zero();
  if (is_zero()) return out;
  const std::string text = (negative_ ? "-" : "") + mantissa_ + "e" + std::to_string(exponent_);
  mpfr_set_str(out.get(), text.c_str(), 10, MPFR_RNDN);
  return out;
}

bool same_value(const DecimalString& a, const DecimalString& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (a.negative_ != b.negative_) return false;
  auto normalize = [](const DecimalString& x) {
    const auto last = x.mantissa_.find_last_not_of('0');
    const long trailing = static_cast<long>(x.mantissa_.size() - 1 - last);
    return std::pair{x.mantissa_.substr(0, last + 1), x.exponent_ + trailing};
  };
  return normalize(a) == normalize(b);
}

ExtReal parse_decimal(std::string_view text, const PrecisionContext& ctx) {
  return DecimalString::parse(text).to_ext(ctx);
}

std::string format_fixed(const ExtReal& x, int d, Rounding mode) {
  if (d < 0) throw RangeError("fractional digit count must be nonnegative");
  const int significant = PrecisionContext::digits_for_bits(x.bits());
  return DecimalString::from_ext(x, significant).to_fixed(d, mode);
}

std::string format_working(const ExtReal& x) {
  const auto dec = DecimalString::from_ext(x, PrecisionContext::digits_for_bits(x.bits()));
  return dec.to_fixed(dec.exact_fraction_digits(), Rounding::truncate);
}

std::string format_scientific(const ExtReal& x, int significant) {
  const auto dec = DecimalString::from_ext(x, significant);
  if (dec.is_zero()) return "0";
  const std::string& m = dec.mantissa();
  const long exp10 = dec.exponent() + static_cast<long>(m.size()) - 1;
  std::string out = dec.negative() ? "-" : "";
  out.push_back(m.front());
  if (m.size() > 1) {
    out.push_back('.');
    out.append(m, 1, std::string::npos);
  }
  out += "E";
  out += exp10 < 0 ? "-" : "+";
  out += std::to_string(std::labs(exp10));
  return out;
}

bool same_at_digits(const ExtReal& a, const ExtReal& b, int digits) {
  return same_value(DecimalString::from_ext(a, digits), DecimalString::from_ext(b, digits));
}

ExtReal pow_half_integer(const ExtReal& x, int two_k) {
  if (x.is_zero() && two_k < 0) throw DomainError("zero raised to a negative power");
  if (two_k % 2 == 0) return pow(x, static_cast<long>(two_k / 2));
  if (x.sign() < 0) {
    throw DomainError("half-integer power " + std::to_string(two_k) + "/2 of a negative base");
  }
  const ExtReal exponent = ExtReal(two_k) / ExtReal(2);
  return pow(x, exponent);
}

}  // namespace zseries
