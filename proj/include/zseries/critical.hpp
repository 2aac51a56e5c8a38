#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "zseries/numerics.hpp"

namespace zseries {

/// Critical charge, its inverse and the magnitude of dE~/dlambda there, as
/// printed decimals.
struct CriticalConstants {
  std::string Z_cr;
  std::string lambda_cr;
  std::string slope;

  /// Z_cr = 0.91102822407725573, lambda_cr = 1.09766083373855980,
  /// slope = 0.2451890639 (high-precision variational values).
  static CriticalConstants variational();

  /// Throws DomainError unless lambda_cr * Z_cr rounds to 1 at the shorter
  /// of the two printed precisions.
  void validate(const PrecisionContext& ctx) const;

  /// Decimals printed in lambda_cr.
  int lambda_decimals() const;

  friend bool operator==(const CriticalConstants&, const CriticalConstants&) = default;
};

/// "key; value" lines with keys Z_cr, lambda_cr, slope; '#' comments.
CriticalConstants parse_constants(std::string_view text);
CriticalConstants read_constants_file(const std::string& path);

/// -Z^2 / 2: energy of the one-electron residual ion.
ExtReal threshold_energy(const ExtReal& Z);

/// threshold_energy(Z) - E; positive for a bound two-electron state.
ExtReal ionization_energy(const ExtReal& Z, const ExtReal& E);

/// lambda_cr - lambda. Throws DomainError for lambda > lambda_cr.
ExtReal tilde_lambda(const ExtReal& lambda, const ExtReal& lambda_cr);

struct PuiseuxTerm {
  int two_k = 0;  // exponent = two_k / 2
  ExtReal coefficient;
};

/// E~(lambda) = sum_j c_j (lambda_cr - lambda)^(p_j). The first
/// `fixed_count` terms are held fixed during fitting.
struct PuiseuxModel {
  ExtReal lambda_cr;
  std::vector<PuiseuxTerm> terms;
  int fixed_count = 0;

  /// Throws DomainError unless exponents are strictly increasing.
  void validate() const;

  /// Fixed terms -1/2 and -slope * lambda~ from the critical constants.
  static PuiseuxModel constrained(const CriticalConstants& constants, const PrecisionContext& ctx);

  /// Published terminated expansion around the critical charge:
  /// -1/2 - 0.2451890639 t - 0.0252309 t^{3/2} - 0.5532438 t^2
  ///      + 0.9729112 t^{5/2} - 0.707285 t^3, t = lambda_cr - lambda.
  static PuiseuxModel threshold_preset(const PrecisionContext& ctx);
};

/// Name accepted for threshold_preset by the CLI.
inline constexpr std::string_view kThresholdPresetName = "threshold-puiseux";

/// Model file: "lambda_cr; value", "fixed; count", then "term; two_k; coefficient"
/// lines in exponent order.
PuiseuxModel parse_model(std::string_view text, const PrecisionContext& ctx);
PuiseuxModel read_model_file(const std::string& path, const PrecisionContext& ctx);
std::string serialize_model(const PuiseuxModel& model);

struct EnergyNode {
  ExtReal Z;
  ExtReal E;  // hartree
};

/// Node file: "Z; E" lines in exact decimals, '#' comments.
std::vector<EnergyNode> parse_nodes(std::string_view text, const PrecisionContext& ctx);
std::vector<EnergyNode> read_nodes_file(const std::string& path, const PrecisionContext& ctx);

/// Consecutive half-integer exponents 3/2, 2, 5/2, ... (as two_k).
std::vector<int> default_ladder(std::size_t count);

struct PuiseuxFit {
  PuiseuxModel model;
  ExtReal condition;          // 1-norm condition number of the interpolation matrix
  std::size_t free_nodes = 0; // nodes with lambda~ > 0 that entered the system
  std::size_t critical_nodes = 0;
};

/// Exact interpolation of E~_i = E_i / Z_i^2 with the two leading terms held
/// at -1/2 and -slope. Nodes whose lambda agrees with lambda_cr to its printed
/// decimals sit at the critical point and are satisfied by the fixed part;
/// every other node contributes one equation, and there must be exactly as
/// many free exponents as such nodes.
PuiseuxFit fit_puiseux(const std::vector<EnergyNode>& nodes, const CriticalConstants& constants,
                       const std::vector<int>& free_exponents, const PrecisionContext& ctx);

/// E~ at coupling lambda.
ExtReal eval_scaled(const PuiseuxModel& model, const ExtReal& lambda);

/// E = Z^2 E~(1/Z).
ExtReal eval_energy(const PuiseuxModel& model, const ExtReal& Z);

}  // namespace zseries
