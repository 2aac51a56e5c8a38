#include <algorithm>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "zseries/analysis.hpp"

using namespace zseries;

namespace {

const PrecisionContext ctx{};

ExtReal dec(const std::string& text) { return parse_decimal(text, ctx); }

constexpr auto kRound = Rounding::half_away_from_zero;
constexpr auto kTrunc = Rounding::truncate;

CoefficientTable table_of(const std::vector<ExtReal>& values) {
  std::vector<CoefficientEntry> entries;
  for (std::size_t n = 0; n < values.size(); ++n) {
    entries.push_back(CoefficientEntry::from_text(static_cast<long>(n), format_scientific(values[n], 45)));
  }
  return CoefficientTable::from_entries(std::move(entries), "synthetic");
}

CoefficientTable power_law(const ExtReal& q, const ExtReal& gamma, long N) {
  std::vector<ExtReal> v;
  for (long n = 0; n <= N; ++n) {
    v.push_back(n == 0 ? ctx.integer(1) : pow(q, n) * pow(ctx.integer(n), gamma));
  }
  return table_of(v);
}

}  // namespace

TEST_CASE("digit_agreement examples") {
  CHECK(digit_agreement(dec("-0.527751016544160"), dec("-0.527751016544377"), kTrunc, 15) == 12);
  CHECK(digit_agreement(dec("-2.9037243770341167"), dec("-2.9037243770341196"), kRound, 16) == 14);
  CHECK(digit_agreement(dec("-2.9037243770341167"), dec("-2.9037243770341196"), kTrunc, 16) == 14);
  CHECK(digit_agreement(dec("1.25"), dec("1.25"), kRound, 30) == 30);
  CHECK(digit_agreement(dec("1.25"), dec("1.25"), kTrunc, 7) == 7);
  CHECK(digit_agreement(dec("-0.375"), dec("-0.5"), kRound, 15) == 0);
  CHECK(digit_agreement(dec("3"), dec("-3"), kTrunc, 5) == 0);
}

TEST_CASE("rounded and truncated agreement can differ by more than one digit") {
  const ExtReal a = dec("0.1999999");
  const ExtReal b = dec("0.2");
  CHECK(digit_agreement(a, b, kTrunc, 7) == 0);
  CHECK(digit_agreement(a, b, kRound, 7) == 6);
}

TEST_CASE("digit_agreement properties") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 400; ++i) {
    // Pairs that share a random-length prefix so agreement is non-trivial.
    std::string base = oracle::random_decimal(rng, 2, 20);
    if (base.find('.') == std::string::npos) base += ".0";
    std::string other = base;
    const std::size_t cut = other.find('.') + 1 + rng() % 12;
    other.resize(std::min(cut, other.size()));
    for (int k = 0; k < 6; ++k) other.push_back(static_cast<char>('0' + rng() % 10));
    const ExtReal a = dec(base);
    const ExtReal b = dec(other);
    const int cap = static_cast<int>(rng() % 25);
    const int r = digit_agreement(a, b, kRound, cap);
    const int t = digit_agreement(a, b, kTrunc, cap);
    INFO(base << " vs " << other << " cap " << cap);
    CHECK(r == digit_agreement(b, a, kRound, cap));
    CHECK(t == digit_agreement(b, a, kTrunc, cap));
    CHECK(r <= cap);
    CHECK(t <= cap);
    CHECK(r >= t - 1);
    // Truncated digits agree at every d up to the returned value.
    for (int d = 0; d <= t; ++d) CHECK(format_fixed(a, d, kTrunc) == format_fixed(b, d, kTrunc));
    if (r < cap) CHECK(format_fixed(a, r + 1, kRound) != format_fixed(b, r + 1, kRound));
    // Oracle on the exact decimals.
    int want = 0;
    for (int d = cap; d >= 0; --d) {
      if (oracle::fixed(base, d, false) == oracle::fixed(other, d, false)) {
        want = d;
        break;
      }
    }
    CHECK(t == want);
  }
}

TEST_CASE("reference registry") {
  const auto refs = parse_references(
      "# header\n"
      "Z=1; 1; -0.527751016544377; NN 2007; true\n"
      "Zcr; Zcr; -0.414986212532679; threshold; rounded\n"
      "\n"
      "x; 2.5; -3.0; src; 0  # trailing comment\n");
  REQUIRE(refs.size() == 3);
  CHECK(refs[0].label == "Z=1");
  CHECK(refs[1].charge == "Zcr");
  CHECK(refs[1].rounded);
  CHECK_FALSE(refs[2].rounded);
  CHECK(parse_references(serialize_references(refs)) == refs);
  CHECK_THROWS_AS(parse_references("a; 1; -1; src\n"), ParseError);
  CHECK_THROWS_AS(parse_references("a; 1; -1x; src; true\n"), ParseError);
  CHECK_THROWS_AS(parse_references("a; 1; -1; src; maybe\n"), ParseError);

  const SymbolTable symbols{{"Zcr", "0.91102822407725573"}};
  CHECK(resolve_charge("Zcr", symbols, ctx) == dec("0.91102822407725573"));
  CHECK(resolve_charge("2", symbols, ctx) == ctx.integer(2));
  CHECK_THROWS_AS(resolve_charge("Zfoo", symbols, ctx), DomainError);
  CHECK_THROWS_AS(resolve_charge("0", symbols, ctx), DomainError);
}

TEST_CASE("consistency_report") {
  const auto head = CoefficientTable::analytic_head();
  const auto refs = parse_references(
      "Z=1; 1; -0.527751016544377; NN; true\n"
      "Z=2; 2; -2.75; exact; false\n"
      "bad; Zfoo; -1; none; true\n"
      "Zcr; Zcr; -0.414986212532679; threshold; true\n");
  const SymbolTable symbols{{"Zcr", "0.91102822407725573"}};
  const auto rows = consistency_report(head, refs, 1, ctx, symbols);
  REQUIRE(rows.size() == 4);

  CHECK(rows[0].label == "Z=1");
  CHECK(rows[0].energy_pt == dec("-0.375"));
  CHECK(rows[0].cap == 15);
  CHECK(rows[0].agreement_rounded == 0);
  CHECK(rows[0].agreement_truncated == 0);
  CHECK_FALSE(rows[0].error);

  CHECK(rows[1].agreement_rounded == 2);
  CHECK(rows[1].agreement_truncated == 2);

  REQUIRE(rows[2].error);
  CHECK(rows[2].error->starts_with("bad: "));
  CHECK(rows[2].agreement_rounded == 0);

  CHECK_FALSE(rows[3].error);
  CHECK(rows[3].Z == dec("0.91102822407725573"));

  CHECK_THROWS_AS(consistency_report(head, refs, 2, ctx, symbols), RangeError);
  CHECK(consistency_report(head, {}, 1, ctx).empty());

  SUBCASE("rows follow input order") {
    auto shuffled = refs;
    std::mt19937_64 rng(9);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto rows2 = consistency_report(head, shuffled, 1, ctx, symbols);
    for (std::size_t i = 0; i < shuffled.size(); ++i) {
      const auto it = std::find_if(rows.begin(), rows.end(),
                                   [&](const AgreementRow& r) { return r.label == shuffled[i].label; });
      REQUIRE(it != rows.end());
      CHECK(rows2[i].label == it->label);
      CHECK(rows2[i].energy_pt == it->energy_pt);
      CHECK(rows2[i].agreement_rounded == it->agreement_rounded);
      CHECK(rows2[i].agreement_truncated == it->agreement_truncated);
    }
  }

  SUBCASE("cap is limited by the working precision") {
    const auto long_ref = parse_references(
        "long; 2; -2.750000000000000000000000000000000000000000000001; exact; false\n");
    const auto r = consistency_report(head, long_ref, 1, ctx);
    CHECK(r[0].cap == ctx.digits() - 2);
    CHECK(r[0].agreement_truncated == ctx.digits() - 2);
  }
}

TEST_CASE("ratio_sequence") {
  const auto head = CoefficientTable::analytic_head();
  CHECK_THROWS_AS(ratio_sequence(head, ctx), ArityError);

  const auto t = parse_table("0 1\n1 0.5\n2 0.25\n3 0\n4 0.0625\n5 0.03125\n");
  const auto seq = ratio_sequence(t, ctx);
  REQUIRE(seq.ratios.size() == 3);
  CHECK(seq.ratios[0].first == 2);
  CHECK(seq.ratios[0].second == dec("0.5"));
  CHECK(seq.ratios[1].first == 3);
  CHECK(seq.ratios[1].second.is_zero());
  CHECK(seq.ratios[2].first == 5);
  CHECK(seq.omitted == std::vector<long>{4});
}

TEST_CASE("estimate_radius") {
  SUBCASE("two points define the line") {
    const std::vector<std::pair<long, ExtReal>> r{{2, dec("1")}, {4, dec("0.75")}};
    const auto est = estimate_radius(r, 2, 4);
    CHECK(est.slope == dec("1"));
    CHECK(est.intercept == dec("0.5"));
    CHECK(est.lambda_star == dec("2"));
    CHECK(est.points == 2);
    CHECK(est.method.find("[2, 4]") != std::string::npos);
  }

  SUBCASE("geometric tables give 1/q") {
    for (const char* q : {"0.3", "0.9110288", "0.99"}) {
      const ExtReal qv = dec(q);
      const auto seq = ratio_sequence(power_law(qv, ctx.zero(), 80), ctx);
      const auto est = estimate_radius(seq.ratios, 2, 80);
      const ExtReal want = ExtReal(1) / qv;
      INFO("q=" << q);
      CHECK(format_fixed(est.lambda_star, 12, kRound) == format_fixed(want, 12, kRound));
      CHECK(abs(est.lambda_star - want) <= want * dec("1e-35"));
    }
  }

  SUBCASE("power-law corrections shrink as the window moves out") {
    const ExtReal q = dec("0.9110288");
    const auto seq = ratio_sequence(power_law(q, dec("-1.5"), 800), ctx);
    const ExtReal want = ExtReal(1) / q;
    ExtReal prev = ctx.integer(1);
    for (const auto& [lo, hi] : {std::pair{10L, 20L}, std::pair{50L, 100L}, std::pair{200L, 400L},
                                 std::pair{400L, 800L}}) {
      const ExtReal err = abs(estimate_radius(seq.ratios, lo, hi).lambda_star - want);
      CHECK(err < prev);
      prev = err;
    }
    CHECK(prev < dec("1e-5"));
  }

  SUBCASE("failures") {
    const std::vector<std::pair<long, ExtReal>> r{{2, dec("-1")}, {3, dec("-1")}, {9, dec("0.5")}};
    CHECK_THROWS_AS(estimate_radius(r, 2, 2), ArityError);
    CHECK_THROWS_AS(estimate_radius(r, 4, 8), ArityError);
    CHECK_THROWS_AS(estimate_radius(r, 2, 3), NoFiniteRadiusError);
  }

  SUBCASE("window sensitivity") {
    const auto seq = ratio_sequence(power_law(dec("0.5"), ctx.zero(), 40), ctx);
    const auto ests = window_sensitivity(seq.ratios, 2, 40);
    REQUIRE(ests.size() == 3);
    CHECK(ests[1].n_max + 1 == ests[2].n_min);
    for (const auto& e : ests) CHECK(abs(e.lambda_star - ctx.integer(2)) < dec("1e-35"));
  }
}
