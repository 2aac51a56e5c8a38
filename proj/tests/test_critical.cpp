#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "zseries/critical.hpp"
#include "zseries/series.hpp"

using namespace zseries;

namespace {

const PrecisionContext ctx{};

ExtReal dec(const std::string& text) { return parse_decimal(text, ctx); }

constexpr auto kRound = Rounding::half_away_from_zero;

std::vector<EnergyNode> nodes_from(const PuiseuxModel& model, const std::vector<std::string>& charges) {
  std::vector<EnergyNode> nodes;
  for (const auto& z : charges) nodes.push_back({dec(z), eval_energy(model, dec(z))});
  return nodes;
}

}  // namespace

TEST_CASE("critical constants") {
  const auto c = CriticalConstants::variational();
  CHECK(c.lambda_decimals() == 17);
  CHECK_NOTHROW(c.validate(ctx));
  CHECK_THROWS_AS((CriticalConstants{"0.911", "1.2", "0.245"}.validate(ctx)), DomainError);
  CHECK(parse_constants("# c\nZ_cr; 0.91102822407725573\nlambda_cr; 1.09766083373855980\nslope; 0.2451890639\n") == c);
  CHECK_THROWS_AS(parse_constants("Z_cr; 1\nlambda_cr; 1\n"), ParseError);
  CHECK_THROWS_AS(parse_constants("Z_cr; 1\nlambda_cr; 1\nslope; 1\nmu; 2\n"), ParseError);
}

TEST_CASE("threshold and ionization energies") {
  const ExtReal zcr = dec("0.91102822407725573");
  const ExtReal thr = threshold_energy(zcr);
  CHECK(format_fixed(thr, 15, kRound) == "-0.414986212532679");
  const oracle::cpp_rational zq = oracle::rational("0.91102822407725573");
  CHECK(format_fixed(thr, 35, kRound) == oracle::rational_fixed(-zq * zq / 2, 35, true));
  CHECK(ionization_energy(zcr, thr).is_zero());

  CHECK(threshold_energy(ctx.integer(2)) == ctx.integer(-2));
  for (const auto& [z, e] : {std::pair<std::string, std::string>{"1", "-0.527751016544377"},
                             {"2", "-2.903724377034119"},
                             {"10", "-93.906806515037549"}}) {
    // -Z^2/2 - E in exact decimals: Z^2/2 = 5 Z^2 / 10.
    const auto zd = oracle::Decimal::parse(z);
    const auto z2 = zd * zd;
    const auto half = oracle::Decimal{-z2.units * 5, z2.scale + 1} - oracle::Decimal::parse(e);
    CHECK(format_fixed(ionization_energy(dec(z), dec(e)), 15, Rounding::truncate) ==
          half.rounded(15, false).str());
  }

  SUBCASE("quadratic scaling") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 100; ++i) {
      std::string z = oracle::random_decimal(rng, 2, 12);
      if (z.front() == '-') z.erase(0, 1);
      const ExtReal Z = dec(z);
      if (Z.is_zero()) continue;
      const ExtReal k = ctx.integer(1 + static_cast<long>(rng() % 9));
      CHECK(abs(threshold_energy(k * Z) - k * k * threshold_energy(Z)) <= abs(threshold_energy(k * Z)) * dec("1e-39"));
      CHECK(threshold_energy(Z).sign() < 0);
    }
  }
}

TEST_CASE("tilde_lambda") {
  const ExtReal lcr = dec("1.09766083373855980");
  CHECK(abs(tilde_lambda(ctx.integer(1), lcr) - dec("0.09766083373855980")) < dec("1e-40"));
  CHECK(tilde_lambda(lcr, lcr).is_zero());
  CHECK(abs(tilde_lambda(dec("0.5"), lcr) - dec("0.59766083373855980")) < dec("1e-40"));
  CHECK_THROWS_AS(tilde_lambda(dec("1.1"), lcr), DomainError);
}

TEST_CASE("threshold preset") {
  const auto m = PuiseuxModel::threshold_preset(ctx);
  REQUIRE(m.terms.size() == 6);
  CHECK(m.fixed_count == 2);
  CHECK(eval_scaled(m, m.lambda_cr) == dec("-0.5"));
  // Fit column of the near-threshold table, as scaled energies E/Z^2.
  CHECK(abs(eval_scaled(m, lambda_of(dec("1"))) - dec("-0.527751009")) < dec("5e-9"));
  CHECK(abs(eval_scaled(m, lambda_of(dec("0.95"))) - dec("-0.512049511")) < dec("5e-9"));
  CHECK(abs(eval_scaled(m, lambda_of(dec("1.15"))) - dec("-0.57168")) < dec("5e-5"));
  CHECK(abs(eval_scaled(m, lambda_of(dec("1.25"))) - dec("-0.5977")) < dec("5e-4"));
  CHECK(abs(eval_scaled(m, lambda_of(dec("1.3"))) - dec("-0.6099")) < dec("5e-4"));
  CHECK(eval_energy(m, dec("2")) == ctx.integer(4) * eval_scaled(m, dec("0.5")));
  CHECK_THROWS_AS(eval_scaled(m, dec("1.2")), DomainError);
}

TEST_CASE("model files") {
  const auto m = PuiseuxModel::threshold_preset(ctx);
  const auto back = parse_model(serialize_model(m), ctx);
  CHECK(back.lambda_cr == m.lambda_cr);
  CHECK(back.fixed_count == m.fixed_count);
  REQUIRE(back.terms.size() == m.terms.size());
  for (std::size_t j = 0; j < m.terms.size(); ++j) {
    CHECK(back.terms[j].two_k == m.terms[j].two_k);
    CHECK(same_at_digits(back.terms[j].coefficient, m.terms[j].coefficient, ctx.digits()));
  }
  CHECK_THROWS_AS(parse_model("fixed; 0\nterm; 0; 1\n", ctx), ParseError);
  CHECK_THROWS_AS(parse_model("lambda_cr; 1\nterm; x; 1\n", ctx), ParseError);
  CHECK_THROWS_AS(parse_model("lambda_cr; 1\nterm; 3; 1\nterm; 3; 2\n", ctx), DomainError);
  CHECK_THROWS_AS(parse_model("lambda_cr; 1\nbogus; 1\n", ctx), ParseError);
}

TEST_CASE("node files") {
  const auto nodes = parse_nodes("# Z; E\n1; -0.5277\n1.3; -1.03\n", ctx);
  REQUIRE(nodes.size() == 2);
  CHECK(nodes[1].Z == dec("1.3"));
  CHECK_THROWS_AS(parse_nodes("1\n", ctx), ParseError);
  CHECK_THROWS_AS(parse_nodes("0; -1\n", ctx), DomainError);
  CHECK(default_ladder(3) == std::vector<int>{3, 4, 5});
  CHECK(default_ladder(0).empty());
}

TEST_CASE("fit_puiseux") {
  const auto constants = CriticalConstants::variational();
  const auto preset = PuiseuxModel::threshold_preset(ctx);

  SUBCASE("round trip recovers synthetic coefficients") {
    const auto nodes = nodes_from(preset, {"0.95", "1", "1.15", "1.3"});
    const auto fit = fit_puiseux(nodes, constants, {3, 4, 5, 6}, ctx);
    CHECK(fit.free_nodes == 4);
    CHECK(fit.critical_nodes == 0);
    REQUIRE(fit.model.terms.size() == 6);
    for (std::size_t j = 0; j < 6; ++j) {
      INFO("term " << j);
      CHECK(fit.model.terms[j].two_k == preset.terms[j].two_k);
      const ExtReal& want = preset.terms[j].coefficient;
      CHECK(abs(fit.model.terms[j].coefficient - want) <= abs(want) * dec("1e-30"));
    }
    CHECK(fit.condition >= ctx.integer(1));
  }

  SUBCASE("random synthetic models") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
      PuiseuxModel m = PuiseuxModel::constrained(constants, ctx);
      std::vector<int> ladder;
      int p = 2;
      for (int j = 0; j < 4; ++j) {
        p += 1 + static_cast<int>(rng() % 2);
        ladder.push_back(p);
        m.terms.push_back({p, dec(oracle::random_decimal(rng, 1, 10))});
      }
      const auto fit = fit_puiseux(nodes_from(m, {"0.93", "1.02", "1.2", "1.45"}), constants, ladder, ctx);
      for (std::size_t j = 2; j < m.terms.size(); ++j) {
        CHECK(abs(fit.model.terms[j].coefficient - m.terms[j].coefficient) <=
              abs(m.terms[j].coefficient) * dec("1e-30") + dec("1e-32"));
      }
    }
  }

  SUBCASE("fit then evaluate interpolates every node") {
    const auto nodes = parse_nodes(
        "0.91102822407725573; -0.41498621253267923849870774390891645\n"
        "0.95; -0.4621246999225\n1.00; -0.5277510170000\n1.15; -0.7560143154325\n"
        "1.25; -0.9335752718750\n1.3; -1.02989666221\n",
        ctx);
    const auto fit = fit_puiseux(nodes, constants, default_ladder(5), ctx);
    CHECK(fit.critical_nodes == 1);
    CHECK(fit.free_nodes == 5);
    // The critical node is matched only to the printed precision of lambda_cr.
    CHECK(abs(eval_energy(fit.model, nodes[0].Z) - nodes[0].E) < abs(nodes[0].E) * dec("1e-17"));
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      CHECK(abs(eval_energy(fit.model, nodes[i].Z) - nodes[i].E) < abs(nodes[i].E) * dec("1e-32"));
    }
  }

  SUBCASE("critical node alone needs no free exponents") {
    const std::vector<EnergyNode> nodes{{dec("0.91102822407725573"), dec("-0.414986212532679")}};
    const auto fit = fit_puiseux(nodes, constants, {}, ctx);
    CHECK(fit.critical_nodes == 1);
    CHECK(fit.free_nodes == 0);
    CHECK(fit.model.terms.size() == 2);
    CHECK(eval_scaled(fit.model, fit.model.lambda_cr) == dec("-0.5"));
  }

  SUBCASE("failures") {
    const auto two = nodes_from(preset, {"1", "1.2"});
    CHECK_THROWS_AS(fit_puiseux(two, constants, {3}, ctx), ArityError);
    CHECK_THROWS_AS(fit_puiseux(two, constants, {3, 4, 5}, ctx), ArityError);
    CHECK_THROWS_AS(fit_puiseux(two, constants, {4, 3}, ctx), DomainError);
    CHECK_THROWS_AS(fit_puiseux(two, constants, {2, 3}, ctx), DomainError);
    const std::vector<EnergyNode> dup{two[0], two[0]};
    CHECK_THROWS_AS(fit_puiseux(dup, constants, {3, 4}, ctx), SingularSystemError);
    const std::vector<EnergyNode> below{{dec("0.8"), dec("-0.3")}};
    CHECK_THROWS_AS(fit_puiseux(below, constants, {3}, ctx), DomainError);
  }
}
