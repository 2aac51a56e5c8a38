#include "zseries/analysis.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace zseries {

namespace {

std::string trimmed(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto sep = line.find(';', start);
    fields.push_back(trimmed(line.substr(start, sep == std::string_view::npos ? sep : sep - start)));
    if (sep == std::string_view::npos) break;
    start = sep + 1;
  }
  return fields;
}

bool parse_flag(const std::string& text, int line_no) {
  if (text == "true" || text == "rounded" || text == "1") return true;
  if (text == "false" || text == "unrounded" || text == "0") return false;
  throw ParseError("line " + std::to_string(line_no) + ": rounded-flag must be true or false, got '" +
                       text + "'",
                   line_no, 1);
}

}  // namespace

std::vector<ReferenceEnergy> parse_references(std::string_view text) {
  std::vector<ReferenceEnergy> refs;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trimmed(line).empty()) continue;
    auto fields = split_fields(line);
    if (fields.size() != 5) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 5 ';'-separated fields, got " +
                           std::to_string(fields.size()),
                       line_no, 1);
    }
    try {
      DecimalString::parse(fields[2]);
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), line_no, e.column());
    }
    refs.push_back({fields[0], fields[1], fields[2], fields[3], parse_flag(fields[4], line_no)});
  }
  return refs;
}

std::vector<ReferenceEnergy> read_reference_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open reference file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_references(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line(), e.column());
  }
}

std::string serialize_references(const std::vector<ReferenceEnergy>& refs) {
  std::string out;
  for (const auto& r : refs) {
    out += r.label + "; " + r.charge + "; " + r.value + "; " + r.source + "; " +
           (r.rounded ? "true" : "false") + "\n";
  }
  return out;
}

ExtReal resolve_charge(std::string_view charge, const SymbolTable& symbols,
                       const PrecisionContext& ctx) {
  ExtReal Z = ctx.zero();
  if (const auto it = symbols.find(charge); it != symbols.end()) {
    Z = parse_decimal(it->second, ctx);
  } else {
    try {
      Z = parse_decimal(charge, ctx);
    } catch (const ParseError&) {
      throw DomainError("unknown charge symbol '" + std::string(charge) + "'");
    }
  }
  if (Z.sign() <= 0) throw DomainError("nuclear charge must be positive, got " + std::string(charge));
  return Z;
}

int digit_agreement(const ExtReal& a, const ExtReal& b, Rounding mode, int cap) {
  for (int d = cap; d >= 0; --d) {
    if (format_fixed(a, d, mode) == format_fixed(b, d, mode)) return d;
  }
  return 0;
}

std::vector<AgreementRow> consistency_report(const CoefficientTable& table,
                                             const std::vector<ReferenceEnergy>& refs, long N,
                                             const PrecisionContext& ctx,
                                             const SymbolTable& symbols) {
  std::vector<AgreementRow> rows;
  rows.reserve(refs.size());
  if (N < 0 || N > table.max_order()) {
    throw RangeError("order N=" + std::to_string(N) + " exceeds table max_order " +
                     std::to_string(table.max_order()));
  }
  const ExtVector e = table.values(ctx, N);
  for (const auto& ref : refs) {
    AgreementRow row;
    row.label = ref.label;
    row.charge = ref.charge;
    row.source = ref.source;
    row.Z = ctx.zero();
    row.energy_pt = ctx.zero();
    row.energy_ref = ctx.zero();
    try {
      row.Z = resolve_charge(ref.charge, symbols, ctx);
      const auto ref_dec = DecimalString::parse(ref.value);
      row.energy_ref = ref_dec.to_ext(ctx);
      row.energy_pt = weighted_sum(e, row.Z, N).energy;
      row.cap = std::min(ref_dec.written_fraction_digits(), ctx.digits() - 2);
      row.agreement_rounded =
          digit_agreement(row.energy_pt, row.energy_ref, Rounding::half_away_from_zero, row.cap);
      row.agreement_truncated =
          digit_agreement(row.energy_pt, row.energy_ref, Rounding::truncate, row.cap);
    } catch (const Error& err) {
      row.error = ref.label + ": " + err.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

RatioSequence ratio_sequence(const CoefficientTable& table, const PrecisionContext& ctx) {
  if (table.max_order() < 2) {
    throw ArityError("ratio analysis needs coefficients up to at least n=2");
  }
  const ExtVector e = table.values(ctx);
  RatioSequence out;
  for (long n = 2; n <= table.max_order(); ++n) {
    if (e[n - 1].is_zero()) {
      out.omitted.push_back(n);
      continue;
    }
    out.ratios.emplace_back(n, e[n] / e[n - 1]);
  }
  return out;
}

RadiusEstimate estimate_radius(const std::vector<std::pair<long, ExtReal>>& ratios, long n_min,
                               long n_max) {
  std::vector<const std::pair<long, ExtReal>*> window;
  for (const auto& p : ratios) {
    if (p.first >= n_min && p.first <= n_max) window.push_back(&p);
  }
  if (window.size() < 2) {
    throw ArityError("ratio window [" + std::to_string(n_min) + ", " + std::to_string(n_max) +
                     "] holds " + std::to_string(window.size()) + " point(s); at least 2 needed");
  }

  // Centered normal equations for y = c0 + c1 x with x = 1/n.
  const ExtReal::Bits bits = window.front()->second.bits();
  const ExtReal count = ExtReal(static_cast<long>(window.size()));
  ExtReal x_mean = ExtReal::zero_with_bits(bits);
  ExtReal y_mean = ExtReal::zero_with_bits(bits);
  for (const auto* p : window) {
    x_mean += ExtReal(1).with_bits(bits) / ExtReal(p->first);
    y_mean += p->second;
  }
  x_mean /= count;
  y_mean /= count;
  ExtReal sxy = ExtReal::zero_with_bits(bits);
  ExtReal sxx = ExtReal::zero_with_bits(bits);
  for (const auto* p : window) {
    const ExtReal dx = ExtReal(1).with_bits(bits) / ExtReal(p->first) - x_mean;
    sxy += dx * (p->second - y_mean);
    sxx += dx * dx;
  }

  RadiusEstimate est;
  est.n_min = n_min;
  est.n_max = n_max;
  est.points = window.size();
  est.slope = sxy / sxx;
  est.intercept = y_mean - est.slope * x_mean;
  est.method = "domb-sykes: least squares r_n = c0 + c1/n over n in [" + std::to_string(n_min) +
               ", " + std::to_string(n_max) + "], " + std::to_string(window.size()) + " points";
  if (est.intercept.sign() <= 0) {
    throw NoFiniteRadiusError("extrapolated ratio limit c0 = " + format_scientific(est.intercept, 12) +
                              " is not positive over n in [" + std::to_string(n_min) + ", " +
                              std::to_string(n_max) + "]");
  }
  est.lambda_star = ExtReal(1) / est.intercept;
  return est;
}

std::vector<RadiusEstimate> window_sensitivity(const std::vector<std::pair<long, ExtReal>>& ratios,
                                               long n_min, long n_max) {
  std::vector<RadiusEstimate> out;
  out.push_back(estimate_radius(ratios, n_min, n_max));
  const long mid = n_min + (n_max - n_min) / 2;
  for (const auto& [lo, hi] : {std::pair{n_min, mid}, std::pair{mid + 1, n_max}}) {
    try {
      out.push_back(estimate_radius(ratios, lo, hi));
    } catch (const ArityError&) {
      // half-window too small to fit; the full-window estimate stands alone
    } catch (const NoFiniteRadiusError&) {
    }
  }
  return out;
}

}  // namespace zseries
