#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#ifndef ZSERIES_DATA_DIR
#define ZSERIES_DATA_DIR "data"
#endif

namespace zseries::cli {

namespace {

class Formatter {
 public:
  explicit Formatter(const RunConfig& config)
      : decimals_(config.display_decimals), mode_(config.rounding_mode) {}

  std::string operator()(const ExtReal& x) const { return format_fixed(x, decimals_, mode_); }
  static std::string sci(const ExtReal& x) { return format_scientific(x, 12); }

 private:
  int decimals_;
  Rounding mode_;
};

std::string exponent_text(int two_k) {
  if (two_k % 2 == 0) return std::to_string(two_k / 2);
  return std::to_string(two_k) + "/2";
}

CriticalConstants load_constants(const RunConfig& config, const PrecisionContext& ctx) {
  CriticalConstants c = config.constants_path ? read_constants_file(*config.constants_path)
                                              : CriticalConstants::variational();
  c.validate(ctx);
  return c;
}

std::vector<ReferenceEnergy> load_references(const RunConfig& config) {
  return read_reference_file(config.ref_path.value_or(data_dir() + "/references.txt"));
}

CoefficientTable load_table(const RunConfig& config) {
  if (config.coeff_path.empty()) throw IoError("no coefficient file given (--coeffs)");
  return read_table_file(config.coeff_path);
}

long resolve_order(const CoefficientTable& table, std::optional<long> order) {
  const long N = order.value_or(table.max_order());
  if (N < 0 || N > table.max_order()) {
    throw RangeError("--order " + std::to_string(N) + " outside 0.." + std::to_string(table.max_order()));
  }
  return N;
}

Section report_section(std::string name, const std::vector<AgreementRow>& rows, const Formatter& fmt,
                       bool& row_errors) {
  Section sec{std::move(name),
              {"label", "Z", "source", "E_pt", "E_ref", "agree_rounded", "agree_truncated", "cap", "error"},
              {}};
  for (const auto& r : rows) {
    if (r.error) {
      row_errors = true;
      sec.add({r.label, r.charge, r.source, "", "", "", "", "", *r.error});
      continue;
    }
    sec.add({r.label, r.charge, r.source, fmt(r.energy_pt), fmt(r.energy_ref),
             std::to_string(r.agreement_rounded), std::to_string(r.agreement_truncated),
             std::to_string(r.cap), ""});
  }
  return sec;
}

SymbolTable symbols_from(const CriticalConstants& c) { return {{"Zcr", c.Z_cr}}; }

Section coefficient_section(const CoefficientTable& table, long N) {
  return Section{"coefficients",
                 {"provenance", "max_order", "order_used"},
                 {{table.provenance(), std::to_string(table.max_order()), std::to_string(N)}}};
}

}  // namespace

std::string data_dir() {
  if (const char* env = std::getenv("ZSERIES_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return ZSERIES_DATA_DIR;
}

CommandResult cmd_sum(const RunConfig& config, const std::string& Z, std::optional<long> order,
                      SummationOrder summation, bool trace) {
  const PrecisionContext ctx = config.context();
  const Formatter fmt(config);
  const CoefficientTable table = load_table(config);
  const long N = resolve_order(table, order);
  const ExtReal charge = parse_decimal(Z, ctx);
  const SeriesEvaluation ev = weighted_sum(table, charge, N, ctx, summation);

  CommandResult result;
  result.document.push_back(coefficient_section(table, N));
  result.document.push_back(Section{
      "sum",
      {"Z", "lambda", "order", "summation", "scaled_sum", "energy", "remainder"},
      {{Z, fmt(ev.lambda), std::to_string(ev.order), std::string(to_string(ev.summation)),
        fmt(ev.scaled_sum), fmt(ev.energy), Formatter::sci(ev.remainder)}}});
  if (trace) {
    Section sec{"trace", {"n", "S_n"}, {}};
    for (const auto& [n, s] : partial_sum_trace(table, charge, N, ctx)) sec.add({std::to_string(n), fmt(s)});
    result.document.push_back(std::move(sec));
  }
  return result;
}

CommandResult cmd_report(const RunConfig& config, std::optional<long> order) {
  const PrecisionContext ctx = config.context();
  const Formatter fmt(config);
  const CoefficientTable table = load_table(config);
  const long N = resolve_order(table, order);
  const auto refs = load_references(config);
  const auto constants = load_constants(config, ctx);

  CommandResult result;
  result.document.push_back(coefficient_section(table, N));
  result.document.push_back(report_section(
      "report", consistency_report(table, refs, N, ctx, symbols_from(constants)), fmt, result.row_errors));
  return result;
}

CommandResult cmd_round_experiment(const RunConfig& config, int decimals, std::optional<long> order) {
  const PrecisionContext ctx = config.context();
  const Formatter fmt(config);
  const CoefficientTable table = load_table(config);
  const long N = resolve_order(table, order);
  const CoefficientTable rounded = round_decimals(table, decimals, config.rounding_mode);
  const auto refs = load_references(config);
  const auto symbols = symbols_from(load_constants(config, ctx));

  const auto before = consistency_report(table, refs, N, ctx, symbols);
  const auto after = consistency_report(rounded, refs, N, ctx, symbols);

  CommandResult result;
  result.document.push_back(Section{"experiment",
                                    {"decimals", "mode", "order", "zeroed_coefficients"},
                                    {}});
  long zeroed = 0;
  for (const auto& e : rounded.entries()) {
    if (DecimalString::parse(e.raw).is_zero() && !DecimalString::parse(table[e.n].raw).is_zero()) ++zeroed;
  }
  result.document.back().add({std::to_string(decimals), std::string(to_string(config.rounding_mode)),
                              std::to_string(N), std::to_string(zeroed)});
  result.document.push_back(report_section("original", before, fmt, result.row_errors));
  result.document.push_back(report_section("rounded", after, fmt, result.row_errors));

  Section cmp{"comparison",
              {"label", "E_original", "E_rounded", "shift", "delta_agree_rounded", "delta_agree_truncated"},
              {}};
  for (std::size_t i = 0; i < before.size(); ++i) {
    const auto& b = before[i];
    const auto& a = after[i];
    if (b.error || a.error) {
      cmp.add({b.label, "", "", "", "", ""});
      continue;
    }
    cmp.add({b.label, fmt(b.energy_pt), fmt(a.energy_pt), Formatter::sci(a.energy_pt - b.energy_pt),
             std::to_string(a.agreement_rounded - b.agreement_rounded),
             std::to_string(a.agreement_truncated - b.agreement_truncated)});
  }
  result.document.push_back(std::move(cmp));
  return result;
}

CommandResult cmd_ratios(const RunConfig& config, std::optional<long> n_min, std::optional<long> n_max) {
  const PrecisionContext ctx = config.context();
  const Formatter fmt(config);
  const CoefficientTable table = load_table(config);
  const RatioSequence seq = ratio_sequence(table, ctx);
  const long lo = n_min.value_or(2);
  const long hi = n_max.value_or(table.max_order());

  CommandResult result;
  Section ratios{"ratios", {"n", "r_n"}, {}};
  for (const auto& [n, r] : seq.ratios) ratios.add({std::to_string(n), fmt(r)});
  result.document.push_back(std::move(ratios));
  Section omitted{"omitted", {"n", "reason"}, {}};
  for (long n : seq.omitted) omitted.add({std::to_string(n), "e_{n-1} = 0"});
  result.document.push_back(std::move(omitted));

  Section radius{"radius", {"window", "points", "c0", "c1", "lambda_star", "method"}, {}};
  for (const auto& est : window_sensitivity(seq.ratios, lo, hi)) {
    radius.add({std::to_string(est.n_min) + ".." + std::to_string(est.n_max), std::to_string(est.points),
                fmt(est.intercept), fmt(est.slope), fmt(est.lambda_star), est.method});
  }
  result.document.push_back(std::move(radius));
  return result;
}

CommandResult cmd_fit(const RunConfig& config, const std::string& nodes_path, const std::vector<int>& ladder,
                      const std::optional<std::string>& model_out) {
  const PrecisionContext ctx = config.context();
  const Formatter fmt(config);
  const auto constants = load_constants(config, ctx);
  const auto nodes = read_nodes_file(nodes_path, ctx);

  std::vector<int> exponents = ladder;
  if (exponents.empty()) {
    // One free exponent per node off the critical point.
    const ExtReal lambda_cr = parse_decimal(constants.lambda_cr, ctx);
    const ExtReal tol = parse_decimal("0.5e-" + std::to_string(constants.lambda_decimals()), ctx);
    std::size_t free_nodes = 0;
    for (const auto& node : nodes) {
      if (abs(lambda_cr - lambda_of(ctx.widen(node.Z))) > tol) ++free_nodes;
    }
    exponents = default_ladder(free_nodes);
  }
  const PuiseuxFit fit = fit_puiseux(nodes, constants, exponents, ctx);

  CommandResult result;
  Section model{"model", {"term", "exponent", "coefficient", "fixed"}, {}};
  for (std::size_t j = 0; j < fit.model.terms.size(); ++j) {
    const auto& t = fit.model.terms[j];
    model.add({std::to_string(j), exponent_text(t.two_k), fmt(t.coefficient),
               static_cast<int>(j) < fit.model.fixed_count ? "yes" : "no"});
  }
  result.document.push_back(std::move(model));

  Section residuals{"nodes", {"Z", "E", "E_fit", "residual"}, {}};
  for (const auto& node : nodes) {
    const ExtReal Z = ctx.widen(node.Z);
    const ExtReal e_fit = eval_energy(fit.model, Z);
    residuals.add({format_working(node.Z), fmt(node.E), fmt(e_fit), Formatter::sci(e_fit - node.E)});
  }
  result.document.push_back(std::move(residuals));
  result.document.push_back(Section{"diagnostics",
                                    {"condition", "free_nodes", "critical_nodes", "lambda_cr"},
                                    {{Formatter::sci(fit.condition), std::to_string(fit.free_nodes),
                                      std::to_string(fit.critical_nodes), constants.lambda_cr}}});
  if (model_out) {
    std::ofstream f(*model_out, std::ios::binary);
    if (!f) throw IoError("cannot write model file '" + *model_out + "'");
    f << serialize_model(fit.model);
  }
  return result;
}

CommandResult cmd_eval_fit(const RunConfig& config, const std::optional<std::string>& preset,
                           const std::optional<std::string>& model_path,
                           const std::vector<std::string>& charges) {
  const PrecisionContext ctx = config.context();
  const Formatter fmt(config);
  PuiseuxModel model;
  if (model_path) {
    model = read_model_file(*model_path, ctx);
  } else {
    const std::string name = preset.value_or(std::string(kThresholdPresetName));
    if (name != kThresholdPresetName) {
      throw DomainError("unknown preset '" + name + "'");
    }
    model = PuiseuxModel::threshold_preset(ctx);
  }

  CommandResult result;
  Section sec{"eval", {"Z", "lambda", "lambda_tilde", "scaled_energy", "energy"}, {}};
  for (const auto& z : charges) {
    const ExtReal Z = parse_decimal(z, ctx);
    const ExtReal lambda = lambda_of(Z);
    sec.add({z, fmt(lambda), fmt(tilde_lambda(lambda, model.lambda_cr)), fmt(eval_scaled(model, lambda)),
             fmt(eval_energy(model, Z))});
  }
  result.document.push_back(std::move(sec));
  return result;
}

CommandResult cmd_threshold(const RunConfig& config, const std::string& Z, const std::optional<std::string>& E) {
  const PrecisionContext ctx = config.context();
  const Formatter fmt(config);
  const ExtReal charge = parse_decimal(Z, ctx);
  if (charge.sign() <= 0) throw DomainError("nuclear charge Z must be positive");
  CommandResult result;
  Section sec{"threshold", {"Z", "threshold_energy", "E", "ionization_energy"}, {}};
  if (E) {
    const ExtReal energy = parse_decimal(*E, ctx);
    sec.add({Z, fmt(threshold_energy(charge)), *E, fmt(ionization_energy(charge, energy))});
  } else {
    sec.add({Z, fmt(threshold_energy(charge)), "", ""});
  }
  result.document.push_back(std::move(sec));
  return result;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"High-precision analysis of the 1/Z expansion of two-electron ions", "zseries"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::string format = "table";
  std::string mode = "rounded";
  app.add_option("--precision", config.precision, "working precision in significant digits (>= 30)")
      ->check(CLI::Range(PrecisionContext::kMinDigits, 100000));
  app.add_option("--mode", mode, "decimal rounding for display and coefficient rounding")
      ->check(CLI::IsMember({"rounded", "truncated"}));
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"table", "csv", "json"}));
  app.add_option("--display", config.display_decimals, "fractional digits shown")->check(CLI::Range(0, 1000));
  app.add_option("--coeffs", config.coeff_path, "coefficient file");
  app.add_option("--refs", config.ref_path, "reference registry (default: bundled)");
  app.add_option("--constants", config.constants_path, "critical constants file (default: bundled values)");

  std::function<CommandResult()> action;

  auto* sum = app.add_subcommand("sum", "weighted partial sum at one charge");
  std::string sum_z;
  std::optional<long> sum_order;
  std::string summation = "ascending";
  bool trace = false;
  sum->add_option("--Z", sum_z, "nuclear charge")->required();
  sum->add_option("--order", sum_order, "truncation order N (default: max order)");
  sum->add_option("--summation", summation)->check(CLI::IsMember({"ascending", "descending"}));
  sum->add_flag("--trace", trace, "print every partial sum S_n");
  sum->callback([&] {
    action = [&] { return cmd_sum(config, sum_z, sum_order, parse_summation_order(summation), trace); };
  });

  auto* report = app.add_subcommand("report", "agreement with reference energies");
  std::optional<long> report_order;
  report->add_option("--order", report_order);
  report->callback([&] { action = [&] { return cmd_report(config, report_order); }; });

  auto* round = app.add_subcommand("round-experiment", "report before and after rounding coefficients");
  int decimals = 12;
  std::optional<long> round_order;
  round->add_option("--decimals", decimals)->check(CLI::Range(0, 1000));
  round->add_option("--order", round_order);
  round->callback([&] { action = [&] { return cmd_round_experiment(config, decimals, round_order); }; });

  auto* ratios = app.add_subcommand("ratios", "coefficient ratios and radius of convergence");
  std::vector<long> window;
  ratios->add_option("--window", window, "n_min n_max")->expected(2);
  ratios->callback([&] {
    action = [&] {
      std::optional<long> lo;
      std::optional<long> hi;
      if (window.size() == 2) {
        lo = window[0];
        hi = window[1];
      }
      return cmd_ratios(config, lo, hi);
    };
  });

  auto* fit = app.add_subcommand("fit", "constrained Puiseux interpolation near the critical charge");
  std::string nodes_path;
  std::vector<int> ladder;
  std::optional<std::string> model_out;
  fit->add_option("--nodes", nodes_path, "node file 'Z; E'")->required();
  fit->add_option("--ladder", ladder, "free exponents as 2p (e.g. 3,4,5)")->delimiter(',');
  fit->add_option("--output", model_out, "write the fitted model to this file");
  fit->callback([&] { action = [&] { return cmd_fit(config, nodes_path, ladder, model_out); }; });

  auto* eval = app.add_subcommand("eval", "evaluate a Puiseux model");
  std::optional<std::string> preset;
  std::optional<std::string> model_path;
  std::vector<std::string> charges;
  auto* preset_opt = eval->add_option("--preset", preset, "bundled model (threshold-puiseux)");
  eval->add_option("--model", model_path, "model file")->excludes(preset_opt);
  eval->add_option("--Z", charges, "nuclear charge(s)")->required();
  eval->callback([&] { action = [&] { return cmd_eval_fit(config, preset, model_path, charges); }; });

  auto* threshold = app.add_subcommand("threshold", "threshold and ionization energy");
  std::string thr_z;
  std::optional<std::string> thr_e;
  threshold->add_option("--Z", thr_z)->required();
  threshold->add_option("--E", thr_e, "two-electron energy for the ionization energy");
  threshold->callback([&] { action = [&] { return cmd_threshold(config, thr_z, thr_e); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    config.output_format = parse_format(format);
    config.rounding_mode = parse_rounding(mode);
    const CommandResult result = action();
    out << render(result.document, config.output_format);
    return result.row_errors ? 1 : 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace zseries::cli
