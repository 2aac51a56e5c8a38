#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "zseries/numerics.hpp"

namespace zseries {

/// One coefficient e_n as written in its source.
struct CoefficientEntry {
  long n = 0;
  std::string raw;            // byte-exact decimal text
  int declared_decimals = 0;  // fractional digits present in `raw`

  /// Entry for order n; `declared_decimals` is derived from the text.
  static CoefficientEntry from_text(long n, std::string raw);

  friend bool operator==(const CoefficientEntry&, const CoefficientEntry&) = default;
};

/// Provenance prefix that marks the two-electron ground-state series; tables
/// carrying it must start with e_0 = -1, e_1 = 5/8.
inline constexpr std::string_view kTwoElectronProvenance = "two-electron";

/// Coefficients e_0..e_max_order of a 1/Z expansion, stored as exact decimal
/// strings. Orders are contiguous from zero; instances are immutable.
class CoefficientTable {
 public:
  /// Validates contiguity (and the analytic head for two-electron
  /// provenance). Entries may come in any order and are sorted by n.
  static CoefficientTable from_entries(std::vector<CoefficientEntry> entries,
                                       std::string provenance);

  /// e_0 = -1, e_1 = 0.625.
  static CoefficientTable analytic_head();

  const std::vector<CoefficientEntry>& entries() const noexcept { return entries_; }
  const CoefficientEntry& operator[](long n) const;
  const std::string& provenance() const noexcept { return provenance_; }
  long max_order() const noexcept { return static_cast<long>(entries_.size()) - 1; }
  std::size_t size() const noexcept { return entries_.size(); }

  /// e_0..e_N at working precision.
  ExtVector values(const PrecisionContext& ctx) const;
  ExtVector values(const PrecisionContext& ctx, long N) const;

  friend bool operator==(const CoefficientTable&, const CoefficientTable&) = default;

 private:
  CoefficientTable(std::vector<CoefficientEntry> entries, std::string provenance)
      : entries_(std::move(entries)), provenance_(std::move(provenance)) {}

  std::vector<CoefficientEntry> entries_;
  std::string provenance_;
};

/// Reads the coefficient file format: one "n value" pair per line, '#'
/// starts a comment, blank lines ignored. A comment of the form
/// "# provenance: <text>" sets the table provenance.
CoefficientTable parse_table(std::string_view text);
CoefficientTable read_table_file(const std::string& path);

/// Inverse of parse_table.
std::string serialize(const CoefficientTable& table);

/// Appends zeros so every entry has exactly `d` fractional digits.
/// Refuses (StructureError) when an entry already carries more than `d`.
CoefficientTable pad_decimals(const CoefficientTable& table, int d);

/// Rewrites every entry at `d` fractional digits. Entries smaller than half a
/// unit in the d-th place become zero under rounding.
CoefficientTable round_decimals(const CoefficientTable& table, int d, Rounding mode);

/// Orders 0..N.
CoefficientTable truncate_order(const CoefficientTable& table, long N);

}  // namespace zseries
