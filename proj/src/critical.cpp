#include "zseries/critical.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "zseries/series.hpp"

namespace zseries {

namespace {

std::string trimmed(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

// Non-comment, non-blank lines split at ';', with 1-based line numbers.
std::vector<std::pair<int, std::vector<std::string>>> records(std::string_view text) {
  std::vector<std::pair<int, std::vector<std::string>>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trimmed(line).empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const auto sep = line.find(';', start);
      fields.push_back(trimmed(std::string_view(line).substr(
          start, sep == std::string::npos ? std::string::npos : sep - start)));
      if (sep == std::string::npos) break;
      start = sep + 1;
    }
    out.emplace_back(line_no, std::move(fields));
  }
  return out;
}

std::string slurp(const std::string& path, std::string_view what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + std::string(what) + " '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ExtReal decimal_field(const std::string& text, int line_no, const PrecisionContext& ctx) {
  try {
    return parse_decimal(text, ctx);
  } catch (const ParseError& e) {
    throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), line_no, e.column());
  }
}

ExtReal one_norm(const ExtMatrix& m) {
  ExtReal best = ExtReal(0);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    ExtReal col = ExtReal(0);
    for (Eigen::Index i = 0; i < m.rows(); ++i) col += abs(m(i, j));
    if (col > best) best = col;
  }
  return best;
}

}  // namespace

CriticalConstants CriticalConstants::variational() {
  return {"0.91102822407725573", "1.09766083373855980", "0.2451890639"};
}

int CriticalConstants::lambda_decimals() const {
  return DecimalString::parse(lambda_cr).written_fraction_digits();
}

void CriticalConstants::validate(const PrecisionContext& ctx) const {
  const auto z = DecimalString::parse(Z_cr);
  const auto l = DecimalString::parse(lambda_cr);
  DecimalString::parse(slope);
  const ExtReal product = z.to_ext(ctx) * l.to_ext(ctx);
  const int d = std::min(z.written_fraction_digits(), l.written_fraction_digits());
  if (format_fixed(product, d, Rounding::half_away_from_zero) !=
      format_fixed(ctx.integer(1), d, Rounding::half_away_from_zero)) {
    throw DomainError("lambda_cr * Z_cr = " + format_fixed(product, d + 3, Rounding::truncate) +
                      " is not 1 at " + std::to_string(d) + " decimals");
  }
}

CriticalConstants parse_constants(std::string_view text) {
  CriticalConstants c;
  for (const auto& [line_no, fields] : records(text)) {
    if (fields.size() != 2) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'key; value'", line_no, 1);
    }
    try {
      DecimalString::parse(fields[1]);
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), line_no, e.column());
    }
    if (fields[0] == "Z_cr") {
      c.Z_cr = fields[1];
    } else if (fields[0] == "lambda_cr") {
      c.lambda_cr = fields[1];
    } else if (fields[0] == "slope") {
      c.slope = fields[1];
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unknown key '" + fields[0] + "'",
                       line_no, 1);
    }
  }
  if (c.Z_cr.empty() || c.lambda_cr.empty() || c.slope.empty()) {
    throw ParseError("constants file needs Z_cr, lambda_cr and slope", 0, 1);
  }
  return c;
}

CriticalConstants read_constants_file(const std::string& path) {
  return parse_constants(slurp(path, "constants file"));
}

ExtReal threshold_energy(const ExtReal& Z) { return -(Z * Z) / ExtReal(2); }

ExtReal ionization_energy(const ExtReal& Z, const ExtReal& E) { return threshold_energy(Z) - E; }

ExtReal tilde_lambda(const ExtReal& lambda, const ExtReal& lambda_cr) {
  ExtReal t = lambda_cr - lambda;
  if (t.sign() < 0) {
    throw DomainError("lambda = " + format_working(lambda) + " lies beyond lambda_cr = " +
                      format_working(lambda_cr));
  }
  return t;
}

void PuiseuxModel::validate() const {
  for (std::size_t j = 1; j < terms.size(); ++j) {
    if (terms[j].two_k <= terms[j - 1].two_k) {
      throw DomainError("Puiseux exponents must be strictly increasing (" +
                        std::to_string(terms[j - 1].two_k) + "/2 then " +
                        std::to_string(terms[j].two_k) + "/2)");
    }
  }
  if (fixed_count < 0 || static_cast<std::size_t>(fixed_count) > terms.size()) {
    throw DomainError("fixed term count outside the model");
  }
}

PuiseuxModel PuiseuxModel::constrained(const CriticalConstants& constants,
                                       const PrecisionContext& ctx) {
  PuiseuxModel m;
  m.lambda_cr = parse_decimal(constants.lambda_cr, ctx);
  m.terms.push_back({0, parse_decimal("-0.5", ctx)});
  m.terms.push_back({2, -parse_decimal(constants.slope, ctx)});
  m.fixed_count = 2;
  return m;
}

PuiseuxModel PuiseuxModel::threshold_preset(const PrecisionContext& ctx) {
  PuiseuxModel m = constrained(CriticalConstants::variational(), ctx);
  m.terms.push_back({3, parse_decimal("-0.0252309", ctx)});
  m.terms.push_back({4, parse_decimal("-0.5532438", ctx)});
  m.terms.push_back({5, parse_decimal("0.9729112", ctx)});
  m.terms.push_back({6, parse_decimal("-0.707285", ctx)});
  return m;
}

PuiseuxModel parse_model(std::string_view text, const PrecisionContext& ctx) {
  PuiseuxModel m;
  bool have_lambda = false;
  for (const auto& [line_no, fields] : records(text)) {
    const std::string& key = fields[0];
    if (key == "lambda_cr" && fields.size() == 2) {
      m.lambda_cr = decimal_field(fields[1], line_no, ctx);
      have_lambda = true;
    } else if (key == "fixed" && fields.size() == 2) {
      m.fixed_count = std::stoi(fields[1]);
    } else if (key == "term" && fields.size() == 3) {
      int two_k = 0;
      try {
        std::size_t used = 0;
        two_k = std::stoi(fields[1], &used);
        if (used != fields[1].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": malformed exponent '" + fields[1] + "'",
                         line_no, 1);
      }
      m.terms.push_back({two_k, decimal_field(fields[2], line_no, ctx)});
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unrecognized model record", line_no, 1);
    }
  }
  if (!have_lambda) throw ParseError("model file lacks a lambda_cr record", 0, 1);
  m.validate();
  return m;
}

PuiseuxModel read_model_file(const std::string& path, const PrecisionContext& ctx) {
  return parse_model(slurp(path, "model file"), ctx);
}

std::string serialize_model(const PuiseuxModel& model) {
  std::string out = "lambda_cr; " + format_working(model.lambda_cr) + "\n";
  out += "fixed; " + std::to_string(model.fixed_count) + "\n";
  for (const auto& t : model.terms) {
    out += "term; " + std::to_string(t.two_k) + "; " + format_working(t.coefficient) + "\n";
  }
  return out;
}

std::vector<EnergyNode> parse_nodes(std::string_view text, const PrecisionContext& ctx) {
  std::vector<EnergyNode> nodes;
  for (const auto& [line_no, fields] : records(text)) {
    if (fields.size() != 2) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'Z; E'", line_no, 1);
    }
    EnergyNode node{decimal_field(fields[0], line_no, ctx), decimal_field(fields[1], line_no, ctx)};
    if (node.Z.sign() <= 0) {
      throw DomainError("line " + std::to_string(line_no) + ": node charge must be positive");
    }
    nodes.push_back(std::move(node));
  }
  return nodes;
}

std::vector<EnergyNode> read_nodes_file(const std::string& path, const PrecisionContext& ctx) {
  return parse_nodes(slurp(path, "node file"), ctx);
}

std::vector<int> default_ladder(std::size_t count) {
  std::vector<int> ladder(count);
  for (std::size_t j = 0; j < count; ++j) ladder[j] = 3 + static_cast<int>(j);
  return ladder;
}

PuiseuxFit fit_puiseux(const std::vector<EnergyNode>& nodes, const CriticalConstants& constants,
                       const std::vector<int>& free_exponents, const PrecisionContext& ctx) {
  PuiseuxFit fit;
  fit.model = PuiseuxModel::constrained(constants, ctx);
  const ExtReal& lambda_cr = fit.model.lambda_cr;
  const ExtReal slope = parse_decimal(constants.slope, ctx);
  // Couplings within half a unit of lambda_cr's last printed decimal are the
  // critical point itself.
  const ExtReal at_critical = parse_decimal("0.5e-" + std::to_string(constants.lambda_decimals()), ctx);

  std::vector<ExtReal> t_free;
  std::vector<ExtReal> target;
  for (const auto& node : nodes) {
    const ExtReal Z = ctx.widen(node.Z);
    const ExtReal lambda = lambda_of(Z);
    const ExtReal t = lambda_cr - lambda;
    if (abs(t) <= at_critical) {
      ++fit.critical_nodes;
      continue;
    }
    if (t.sign() < 0) {
      throw DomainError("node Z = " + format_working(Z) + " lies below the critical charge");
    }
    const ExtReal scaled = ctx.widen(node.E) / (Z * Z);
    target.push_back(scaled - (ExtReal(-1) / ExtReal(2) - slope * t));
    t_free.push_back(t);
  }
  fit.free_nodes = t_free.size();

  if (free_exponents.size() != t_free.size()) {
    throw ArityError(std::to_string(t_free.size()) + " node(s) off the critical point need as many " +
                     "free exponents, got " + std::to_string(free_exponents.size()));
  }
  int previous = fit.model.terms.back().two_k;
  for (int p : free_exponents) {
    if (p <= previous) {
      throw DomainError("free exponent " + std::to_string(p) +
                        "/2 must exceed the preceding exponent " + std::to_string(previous) + "/2");
    }
    previous = p;
  }

  const auto m = static_cast<Eigen::Index>(t_free.size());
  fit.condition = ctx.integer(1);
  if (m > 0) {
    ExtMatrix A(m, m);
    ExtVector b(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < m; ++j) A(i, j) = pow_half_integer(t_free[i], free_exponents[j]);
      b[i] = target[i];
    }

    const Eigen::PartialPivLU<ExtMatrix> lu(A);
    const ExtMatrix& packed = lu.matrixLU();
    for (Eigen::Index k = 0; k < m; ++k) {
      if (packed(k, k).is_zero()) {
        throw SingularSystemError("interpolation matrix is singular (duplicate nodes or exponents); "
                                  "pivot " + std::to_string(k) + " vanished",
                                  "inf");
      }
    }
    const ExtMatrix inverse = lu.inverse();
    fit.condition = one_norm(A) * one_norm(inverse);
    // The solution keeps no correct digit once cond exceeds 10^digits.
    if (fit.condition > parse_decimal("1e" + std::to_string(ctx.digits()), ctx)) {
      throw SingularSystemError("interpolation matrix is numerically singular at " +
                                    std::to_string(ctx.digits()) + " digits",
                                format_scientific(fit.condition, 6));
    }
    const ExtVector c = lu.solve(b);
    for (Eigen::Index j = 0; j < m; ++j) fit.model.terms.push_back({free_exponents[j], c[j]});
  }
  fit.model.validate();
  return fit;
}

ExtReal eval_scaled(const PuiseuxModel& model, const ExtReal& lambda) {
  const ExtReal t = tilde_lambda(lambda, model.lambda_cr);
  ExtReal sum = ExtReal::zero_with_bits(std::max(t.bits(), model.lambda_cr.bits()));
  for (const auto& term : model.terms) sum += term.coefficient * pow_half_integer(t, term.two_k);
  return sum;
}

ExtReal eval_energy(const PuiseuxModel& model, const ExtReal& Z) {
  const ExtReal charge = Z.with_bits(std::max(Z.bits(), model.lambda_cr.bits()));
  return charge * charge * eval_scaled(model, lambda_of(charge));
}

}  // namespace zseries
