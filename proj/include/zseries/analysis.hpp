#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zseries/coeffs.hpp"
#include "zseries/numerics.hpp"
#include "zseries/series.hpp"

namespace zseries {

/// A labeled reference energy. `charge` is a decimal literal or a symbol
/// (e.g. "Zcr") resolved through a SymbolTable.
struct ReferenceEnergy {
  std::string label;
  std::string charge;
  std::string value;  // exact decimal, hartree
  std::string source;
  bool rounded = true;

  friend bool operator==(const ReferenceEnergy&, const ReferenceEnergy&) = default;
};

/// Symbol name -> exact decimal value.
using SymbolTable = std::map<std::string, std::string, std::less<>>;

/// Registry format: "label; Z; value; source; rounded-flag" per line, '#'
/// comments. The flag is "true"/"false" (also "rounded"/"unrounded").
std::vector<ReferenceEnergy> parse_references(std::string_view text);
std::vector<ReferenceEnergy> read_reference_file(const std::string& path);
std::string serialize_references(const std::vector<ReferenceEnergy>& refs);

ExtReal resolve_charge(std::string_view charge, const SymbolTable& symbols,
                       const PrecisionContext& ctx);

/// Largest d <= cap with format_fixed(a, d, mode) == format_fixed(b, d, mode);
/// 0 when no such d exists.
int digit_agreement(const ExtReal& a, const ExtReal& b, Rounding mode, int cap);

struct AgreementRow {
  std::string label;
  std::string charge;
  std::string source;
  ExtReal Z;
  ExtReal energy_pt;
  ExtReal energy_ref;
  int agreement_rounded = 0;
  int agreement_truncated = 0;
  int cap = 0;
  std::optional<std::string> error;  // set when the row could not be evaluated
};

/// One row per reference, in input order. The agreement cap of a row is the
/// number of decimals printed in its reference value, limited by
/// ctx.digits() - 2. Failing rows carry `error` and zero agreement.
std::vector<AgreementRow> consistency_report(const CoefficientTable& table,
                                             const std::vector<ReferenceEnergy>& refs, long N,
                                             const PrecisionContext& ctx,
                                             const SymbolTable& symbols = {});

struct RatioSequence {
  std::vector<std::pair<long, ExtReal>> ratios;  // (n, e_n / e_{n-1}), n >= 2
  std::vector<long> omitted;                     // n with e_{n-1} == 0
};

RatioSequence ratio_sequence(const CoefficientTable& table, const PrecisionContext& ctx);

struct RadiusEstimate {
  ExtReal lambda_star;  // 1 / intercept
  long n_min = 0;
  long n_max = 0;
  std::size_t points = 0;
  ExtReal intercept;  // c0
  ExtReal slope;      // c1
  std::string method;
};

/// Least-squares line r_n = c0 + c1 / n over ratios with n_min <= n <= n_max;
/// lambda_star = 1 / c0.
RadiusEstimate estimate_radius(const std::vector<std::pair<long, ExtReal>>& ratios, long n_min,
                               long n_max);

/// Estimates over the full window and over its lower and upper halves, so a
/// drifting limit shows up as disagreement between the three.
std::vector<RadiusEstimate> window_sensitivity(const std::vector<std::pair<long, ExtReal>>& ratios,
                                               long n_min, long n_max);

}  // namespace zseries
