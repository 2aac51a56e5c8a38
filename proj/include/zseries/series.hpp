#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "zseries/coeffs.hpp"
#include "zseries/numerics.hpp"

namespace zseries {

enum class SummationOrder { ascending, descending };

std::string_view to_string(SummationOrder order);
SummationOrder parse_summation_order(std::string_view text);

/// A weighted partial sum of the 1/Z expansion at one nuclear charge.
struct SeriesEvaluation {
  ExtReal Z;           // nuclear charge
  ExtReal lambda;      // 1/Z
  long order = 0;      // N
  ExtReal scaled_sum;  // sum_{n<=N} e_n lambda^n
  ExtReal energy;      // Z^2 * scaled_sum (hartree)
  ExtReal remainder;   // e_N lambda^N
  SummationOrder summation = SummationOrder::ascending;
};

/// 1/Z. Throws DomainError for Z <= 0.
ExtReal lambda_of(const ExtReal& Z);

/// lambda^0..lambda^N by repeated multiplication.
ExtVector powers(const ExtReal& lambda, long N);

/// sum_{n=0..N} e_n lambda^n, accumulated in the requested index order.
ExtReal scaled_partial_sum(const ExtVector& coefficients, const ExtReal& lambda, long N,
                           SummationOrder order = SummationOrder::ascending);
ExtReal scaled_partial_sum(const CoefficientTable& table, const ExtReal& lambda, long N,
                           const PrecisionContext& ctx,
                           SummationOrder order = SummationOrder::ascending);

SeriesEvaluation weighted_sum(const ExtVector& coefficients, const ExtReal& Z, long N,
                              SummationOrder order = SummationOrder::ascending);
SeriesEvaluation weighted_sum(const CoefficientTable& table, const ExtReal& Z, long N,
                              const PrecisionContext& ctx,
                              SummationOrder order = SummationOrder::ascending);

/// (n, S_n) with S_n = Z^2 sum_{k<=n} e_k Z^-k for n = 0..N. The last entry
/// equals weighted_sum(...).energy.
std::vector<std::pair<long, ExtReal>> partial_sum_trace(const CoefficientTable& table,
                                                        const ExtReal& Z, long N,
                                                        const PrecisionContext& ctx);

/// e_N lambda^N.
ExtReal remainder_term(const CoefficientTable& table, const ExtReal& lambda, long N,
                       const PrecisionContext& ctx);

}  // namespace zseries
