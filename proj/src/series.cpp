#include "zseries/series.hpp"

#include <string>

namespace zseries {

namespace {

void check_order(long N, Eigen::Index available) {
  if (N < 0 || N >= available) {
    throw RangeError("order N=" + std::to_string(N) + " outside 0.." +
                     std::to_string(static_cast<long>(available) - 1));
  }
}

void check_lambda(const ExtReal& lambda) {
  if (lambda.sign() < 0 || !lambda.is_finite()) {
    throw DomainError("lambda must be finite and nonnegative");
  }
}

}  // namespace

std::string_view to_string(SummationOrder order) {
  return order == SummationOrder::ascending ? "ascending" : "descending";
}

SummationOrder parse_summation_order(std::string_view text) {
  if (text == "ascending") return SummationOrder::ascending;
  if (text == "descending") return SummationOrder::descending;
  throw ParseError("unknown summation order '" + std::string(text) + "'", 0, 1);
}

ExtReal lambda_of(const ExtReal& Z) {
  if (Z.sign() <= 0 || !Z.is_finite()) throw DomainError("nuclear charge Z must be positive");
  return ExtReal(1) / Z;
}

ExtVector powers(const ExtReal& lambda, long N) {
  ExtVector out(N + 1);
  out[0] = ExtReal(1).with_bits(lambda.bits());
  for (long n = 1; n <= N; ++n) out[n] = out[n - 1] * lambda;
  return out;
}

ExtReal scaled_partial_sum(const ExtVector& coefficients, const ExtReal& lambda, long N,
                           SummationOrder order) {
  check_order(N, coefficients.size());
  check_lambda(lambda);
  const ExtVector pw = powers(lambda, N);
  ExtReal sum = ExtReal::zero_with_bits(std::max(lambda.bits(), coefficients[0].bits()));
  if (order == SummationOrder::ascending) {
    for (long n = 0; n <= N; ++n) sum += coefficients[n] * pw[n];
  } else {
    for (long n = N; n >= 0; --n) sum += coefficients[n] * pw[n];
  }
  return sum;
}

ExtReal scaled_partial_sum(const CoefficientTable& table, const ExtReal& lambda, long N,
                           const PrecisionContext& ctx, SummationOrder order) {
  check_order(N, static_cast<Eigen::Index>(table.size()));
  return scaled_partial_sum(table.values(ctx, N), ctx.widen(lambda), N, order);
}

SeriesEvaluation weighted_sum(const ExtVector& coefficients, const ExtReal& Z, long N,
                              SummationOrder order) {
  SeriesEvaluation ev;
  ev.Z = Z;
  ev.lambda = lambda_of(Z);
  ev.order = N;
  ev.summation = order;
  ev.scaled_sum = scaled_partial_sum(coefficients, ev.lambda, N, order);
  const ExtReal z2 = Z * Z;
  ev.energy = z2 * ev.scaled_sum;
  ev.remainder = coefficients[N] * pow(ev.lambda, N);
  return ev;
}

SeriesEvaluation weighted_sum(const CoefficientTable& table, const ExtReal& Z, long N,
                              const PrecisionContext& ctx, SummationOrder order) {
  check_order(N, static_cast<Eigen::Index>(table.size()));
  return weighted_sum(table.values(ctx, N), ctx.widen(Z), N, order);
}

std::vector<std::pair<long, ExtReal>> partial_sum_trace(const CoefficientTable& table,
                                                        const ExtReal& Z, long N,
                                                        const PrecisionContext& ctx) {
  check_order(N, static_cast<Eigen::Index>(table.size()));
  const ExtReal charge = ctx.widen(Z);
  const ExtReal lambda = lambda_of(charge);
  const ExtVector e = table.values(ctx, N);
  const ExtVector pw = powers(lambda, N);
  const ExtReal z2 = charge * charge;

  std::vector<std::pair<long, ExtReal>> trace;
  trace.reserve(static_cast<std::size_t>(N + 1));
  ExtReal sum = ctx.zero();
  for (long n = 0; n <= N; ++n) {
    sum += e[n] * pw[n];
    trace.emplace_back(n, z2 * sum);
  }
  return trace;
}

ExtReal remainder_term(const CoefficientTable& table, const ExtReal& lambda, long N,
                       const PrecisionContext& ctx) {
  check_order(N, static_cast<Eigen::Index>(table.size()));
  check_lambda(lambda);
  return parse_decimal(table[N].raw, ctx) * pow(ctx.widen(lambda), N);
}

}  // namespace zseries
