#include "zseries/coeffs.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace zseries {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

constexpr std::string_view kProvenanceTag = "provenance:";

void check_two_electron_head(const std::vector<CoefficientEntry>& entries) {
  static const DecimalString kE0 = DecimalString::parse("-1");
  static const DecimalString kE1 = DecimalString::parse("0.625");
  if (!entries.empty() && !same_value(DecimalString::parse(entries[0].raw), kE0)) {
    throw StructureError("two-electron series requires e_0 = -1, got " + entries[0].raw, 0);
  }
  if (entries.size() > 1 && !same_value(DecimalString::parse(entries[1].raw), kE1)) {
    throw StructureError("two-electron series requires e_1 = 0.625, got " + entries[1].raw, 1);
  }
}

}  // namespace

CoefficientEntry CoefficientEntry::from_text(long n, std::string raw) {
  const auto dec = DecimalString::parse(raw);
  return CoefficientEntry{n, std::move(raw), dec.written_fraction_digits()};
}

CoefficientTable CoefficientTable::from_entries(std::vector<CoefficientEntry> entries,
                                                std::string provenance) {
  if (entries.empty()) throw StructureError("coefficient table is empty", -1);
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) { return a.n < b.n; });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const long expected = static_cast<long>(i);
    if (entries[i].n == expected) continue;
    if (entries[i].n < expected) {
      throw StructureError("duplicate coefficient order n=" + std::to_string(entries[i].n),
                           entries[i].n);
    }
    throw StructureError("gap in coefficient orders: missing n=" + std::to_string(expected),
                         expected);
  }
  for (const auto& e : entries) {
    const auto dec = DecimalString::parse(e.raw);
    if (dec.written_fraction_digits() != e.declared_decimals) {
      throw StructureError("declared decimals of n=" + std::to_string(e.n) +
                               " do not match its text",
                           e.n);
    }
  }
  if (provenance.starts_with(kTwoElectronProvenance)) check_two_electron_head(entries);
  return CoefficientTable(std::move(entries), std::move(provenance));
}

CoefficientTable CoefficientTable::analytic_head() {
  return from_entries({CoefficientEntry::from_text(0, "-1"), CoefficientEntry::from_text(1, "0.625")},
                      "two-electron ground state: analytic head");
}

const CoefficientEntry& CoefficientTable::operator[](long n) const {
  if (n < 0 || n > max_order()) {
    throw RangeError("order " + std::to_string(n) + " outside 0.." + std::to_string(max_order()));
  }
  return entries_[static_cast<std::size_t>(n)];
}

ExtVector CoefficientTable::values(const PrecisionContext& ctx) const {
  return values(ctx, max_order());
}

ExtVector CoefficientTable::values(const PrecisionContext& ctx, long N) const {
  if (N < 0 || N > max_order()) {
    throw RangeError("order " + std::to_string(N) + " exceeds table max_order " +
                     std::to_string(max_order()));
  }
  ExtVector out(N + 1);
  for (long n = 0; n <= N; ++n) out[n] = parse_decimal(entries_[static_cast<std::size_t>(n)].raw, ctx);
  return out;
}

CoefficientTable parse_table(std::string_view text) {
  std::vector<CoefficientEntry> entries;
  std::string provenance;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      const auto comment = trim(line.substr(hash + 1));
      if (comment.starts_with(kProvenanceTag)) {
        provenance = std::string(trim(comment.substr(kProvenanceTag.size())));
      }
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }

    const auto sep = line.find_first_of(" \t");
    if (sep == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'n value'", line_no, 1);
    }
    const auto order_text = line.substr(0, sep);
    const auto value_text = trim(line.substr(sep));
    long n = -1;
    const auto [ptr, ec] = std::from_chars(order_text.data(), order_text.data() + order_text.size(), n);
    if (ec != std::errc{} || ptr != order_text.data() + order_text.size() || n < 0) {
      throw ParseError("line " + std::to_string(line_no) + ": malformed order '" +
                           std::string(order_text) + "'",
                       line_no, 1);
    }
    try {
      entries.push_back(CoefficientEntry::from_text(n, std::string(value_text)));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), line_no, e.column());
    }
    if (end == text.size()) break;
  }
  return CoefficientTable::from_entries(std::move(entries), std::move(provenance));
}

CoefficientTable read_table_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open coefficient file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_table(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line(), e.column());
  }
}

std::string serialize(const CoefficientTable& table) {
  std::string out;
  if (!table.provenance().empty()) out += "# provenance: " + table.provenance() + "\n";
  for (const auto& e : table.entries()) {
    out += std::to_string(e.n);
    out += ' ';
    out += e.raw;
    out += '\n';
  }
  return out;
}

CoefficientTable pad_decimals(const CoefficientTable& table, int d) {
  std::vector<CoefficientEntry> padded;
  padded.reserve(table.size());
  for (const auto& e : table.entries()) {
    if (e.declared_decimals > d) {
      throw StructureError("cannot pad n=" + std::to_string(e.n) + " to " + std::to_string(d) +
                               " decimals: it already carries " +
                               std::to_string(e.declared_decimals),
                           e.n);
    }
    // Exact: every digit of the value survives at d >= declared decimals.
    padded.push_back({e.n, DecimalString::parse(e.raw).to_fixed(d, Rounding::truncate), d});
  }
  return CoefficientTable::from_entries(std::move(padded), table.provenance());
}

CoefficientTable round_decimals(const CoefficientTable& table, int d, Rounding mode) {
  if (d < 0) throw RangeError("decimal count must be nonnegative");
  std::vector<CoefficientEntry> rounded;
  rounded.reserve(table.size());
  for (const auto& e : table.entries()) {
    rounded.push_back({e.n, DecimalString::parse(e.raw).to_fixed(d, mode), d});
  }
  std::string provenance = "derived: " + std::string(to_string(mode)) + " to " +
                           std::to_string(d) + " decimals";
  if (!table.provenance().empty()) provenance += " from " + table.provenance();
  return CoefficientTable::from_entries(std::move(rounded), std::move(provenance));
}

CoefficientTable truncate_order(const CoefficientTable& table, long N) {
  if (N < 0 || N > table.max_order()) {
    throw RangeError("truncation order " + std::to_string(N) + " outside 0.." +
                     std::to_string(table.max_order()));
  }
  std::vector<CoefficientEntry> kept(table.entries().begin(), table.entries().begin() + N + 1);
  return CoefficientTable::from_entries(std::move(kept), table.provenance());
}

}  // namespace zseries
