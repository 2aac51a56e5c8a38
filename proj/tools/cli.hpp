#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "output.hpp"
#include "zseries/analysis.hpp"
#include "zseries/coeffs.hpp"
#include "zseries/critical.hpp"
#include "zseries/numerics.hpp"
#include "zseries/series.hpp"

namespace zseries::cli {

/// Settings shared by every subcommand.
struct RunConfig {
  int precision = PrecisionContext::kDefaultDigits;
  std::string coeff_path;
  std::optional<std::string> ref_path;
  std::optional<std::string> constants_path;
  OutputFormat output_format = OutputFormat::table;
  Rounding rounding_mode = Rounding::half_away_from_zero;
  int display_decimals = 15;

  PrecisionContext context() const { return PrecisionContext(precision, rounding_mode); }
};

/// Document plus whether any row-level error occurred.
struct CommandResult {
  Document document;
  bool row_errors = false;
};

CommandResult cmd_sum(const RunConfig& config, const std::string& Z, std::optional<long> order,
                      SummationOrder summation, bool trace);
CommandResult cmd_report(const RunConfig& config, std::optional<long> order);
CommandResult cmd_round_experiment(const RunConfig& config, int decimals, std::optional<long> order);
CommandResult cmd_ratios(const RunConfig& config, std::optional<long> n_min, std::optional<long> n_max);
CommandResult cmd_fit(const RunConfig& config, const std::string& nodes_path,
                      const std::vector<int>& ladder, const std::optional<std::string>& model_out);
CommandResult cmd_eval_fit(const RunConfig& config, const std::optional<std::string>& preset,
                           const std::optional<std::string>& model_path,
                           const std::vector<std::string>& charges);
CommandResult cmd_threshold(const RunConfig& config, const std::string& Z,
                            const std::optional<std::string>& E);

/// Bundled data directory (reference registry, constants, sample inputs).
std::string data_dir();

/// Full command line entry point. Exit status: 0 on success, 1 when some
/// report row failed, 2 on a fatal error, CLI11's code on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zseries::cli
