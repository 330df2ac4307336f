#include <random>
#include "doctest.h"
#include "fapprox/approximation.hpp"
#include "fapprox/laws.hpp"
#include "fapprox/real_systems.hpp"
#include "test_support.hpp"

using namespace fapprox;
using fapprox::testing::frac;

namespace {

Rational q(const char* s) { return parse_rational(s); }

std::vector<DecimalFP> all_values(const FPParams& params) {
  std::vector<DecimalFP> out;
  const auto n = params.carrier_size().get_ui();
  for (ElementId id = 0; id < n; ++id) out.push_back(fp_from_id(id, params));
  return out;
}

}  // namespace

TEST_CASE("fp_round truncates the normal form") {
  FPParams p{2, 4};
  DecimalFP x = fp_round(q("1.2012"), p);
  CHECK(x.sign == 1);
  CHECK(x.exponent == 1);
  CHECK(x.mantissa == 1201);
  CHECK(x.to_string() == "0.1201e+1");
  CHECK(fp_round(Rational(0), p).is_zero());
  for (unsigned Q : {1u, 3u, 6u}) {
    FPParams pq{2, Q};
    DecimalFP big = fp_round(Rational(1000), pq);
    CHECK(big.exponent == 2);
    CHECK(big.mantissa == pow10(Q) - 1);
    CHECK(fp_round(Rational(-1000), pq).sign == -1);
  }
  // below 10^{-P-1} flushes to zero
  CHECK(fp_round(q("0.0009"), p).is_zero());
  CHECK(fp_round(q("0.001"), p).mantissa == 1000);
  CHECK(fp_round(q("-0.12349"), p).to_string() == "-0.1234e+0");
}

TEST_CASE("fp_round on enclosures") {
  FPParams p{2, 4};
  CHECK(fp_round(ExactScalar(q("1.23456"), q("0.00001")), p).mantissa == 1234);
  CHECK_THROWS_AS(fp_round(ExactScalar(q("1.2340"), q("0.0001")), p), UndecidableError);
}

TEST_CASE("cancellation example") {
  FPParams p{1, 4};
  DecimalFP a = fp_round(q("0.6006"), p);
  DecimalFP c = fp_round(q("0.6005"), p);
  CHECK(fp_add(a, a, p).value() == q("1.201"));
  CHECK(fp_add(a, c, p).value() == q("1.201"));
}

TEST_CASE("fp_div") {
  FPParams p{2, 4};
  CHECK(fp_div(fp_round(Rational(1), p), fp_round(Rational(3), p), p).to_string() == "0.3333e+0");
  DecimalFP one = fp_round(Rational(1), p);
  for (const char* s : {"1.2012", "-37.5", "0.004"}) {
    DecimalFP x = fp_round(q(s), p);
    CHECK(fp_div(x, one, p) == x);
  }
  DecimalFP tiny = DecimalFP::parse("0.1000e-2", p);
  CHECK(tiny.value() == q("0.001"));
  DecimalFP sat = fp_div(one, tiny, p);
  CHECK(sat.value() == fp_max(p));
  CHECK_THROWS_AS(fp_div(one, DecimalFP::zero(4), p), Error);
}

TEST_CASE("A_PQ carrier") {
  FPParams p{1, 1};
  CHECK(p.carrier_size() == 55);
  FiniteAlgebra a = build_APQ(p);
  CHECK(a.size() == 55);
  for (ElementId id = 1; id < a.size(); ++id) CHECK(a.embed(id - 1) < a.embed(id));
  CHECK(a.embed(27) == 0);
  for (ElementId id = 0; id < a.size(); ++id) CHECK(fp_id(fp_from_id(id, p), p) == id);
  CHECK_THROWS_AS(build_APQ(FPParams{3, 6}), Error);
}

TEST_CASE("A_PQ laws, exhaustive at small size") {
  for (long P : {1L}) {
    for (unsigned Q : {1u, 2u}) {
      FPParams p{P, Q};
      auto values = all_values(p);
      DecimalFP zero = DecimalFP::zero(Q);
      for (const auto& x : values) {
        CHECK(fp_add(x, zero, p) == x);
        CHECK(fp_add(x, -x, p).is_zero());
        CHECK(fp_round(x.value(), p) == x);
        CHECK(DecimalFP::parse(x.to_string(), p) == x);
        for (const auto& y : values) {
          DecimalFP s = fp_add(x, y, p);
          DecimalFP m = fp_mul(x, y, p);
          REQUIRE(fp_add(y, x, p) == s);
          REQUIRE(fp_mul(y, x, p) == m);
          // fast integer path agrees with rounding the exact rational
          REQUIRE(s == fp_round(x.value() + y.value(), p));
          REQUIRE(m == fp_round(x.value() * y.value(), p));
        }
      }
      FiniteAlgebra alg = build_APQ(p);
      CHECK_FALSE(law_search(alg, Law::comm("+")));
      CHECK_FALSE(law_search(alg, Law::comm("*")));
    }
  }
}

TEST_CASE("fp_round is idempotent on random rationals") {
  FPParams p{3, 5};
  for (long n = -200000; n <= 200000; n += 997) {
    Rational x = frac(n * 7919, 1013);
    DecimalFP r = fp_round(x, p);
    CHECK(fp_round(r.value(), p) == r);
    CHECK(abs(r.value()) <= abs(x));
  }
}

TEST_CASE("A_PQ approximates [-max, max] at eps = 10^(P-Q)") {
  FPParams p{1, 2};
  FiniteAlgebra alg = build_APQ(p);
  const Rational a = fp_max(p);
  const Rational eps = pow_int(Rational(10), p.P - static_cast<long>(p.Q));
  const Region c = Region::closed(-a, a);
  CHECK(check_approximation(alg, c, Entourage(eps)).ok());
  // independent recount of the homomorphism error
  auto values = all_values(p);
  for (const auto& x : values) {
    for (const auto& y : values) {
      Rational s = x.value() + y.value();
      if (abs(s) <= a) REQUIRE(abs(fp_add(x, y, p).value() - s) < eps);
      Rational m = x.value() * y.value();
      if (abs(m) <= a) REQUIRE(abs(fp_mul(x, y, p).value() - m) < eps);
    }
  }
  CHECK_FALSE(check_approximation(alg, c, Entourage(eps / 4)).ok());
}

TEST_CASE("A_PQ non-associativity") {
  FPParams p{1, 2};
  FiniteAlgebra alg = build_APQ(p);
  auto w = law_search(alg, Law::assoc("+"));
  REQUIRE(w);
  DecimalFP a = fp_from_id(w->tuple[0], p);
  DecimalFP b = fp_from_id(w->tuple[1], p);
  DecimalFP c = fp_from_id(w->tuple[2], p);
  CHECK_FALSE(fp_add(fp_add(a, b, p), c, p) == fp_add(a, fp_add(b, c, p), p));
}

TEST_CASE("A_PQ cancellation witness with pinned slots") {
  FPParams p{1, 4};
  FiniteAlgebra alg = build_APQ(p);
  const ElementId a = fp_id(fp_round(q("0.6006"), p), p);
  LawSearchOptions opts;
  opts.pins = {std::vector<ElementId>{a}, std::vector<ElementId>{a}, std::nullopt};
  opts.restrict = Region::closed(q("0.6005"), q("0.6006"));
  auto w = law_search(alg, Law::cancel("+"), opts);
  REQUIRE(w);
  CHECK(alg.embed(w->tuple[0]) == q("0.6006"));
  CHECK(alg.embed(w->tuple[1]) == q("0.6006"));
  CHECK(alg.embed(w->tuple[2]) == q("0.6005"));
  CHECK(alg.embed(w->lhs) == q("1.201"));
  CHECK(w->lhs == w->rhs);
}

TEST_CASE("DecimalFP text form") {
  FPParams p{3, 4};
  CHECK(DecimalFP::parse("-0.1234e-3", p).value() == q("-0.0001234"));
  CHECK(DecimalFP::parse("0.0000e+0", p).is_zero());
  CHECK(DecimalFP::zero(4).to_string() == "0.0000e+0");
  CHECK_THROWS_AS(DecimalFP::parse("0.123e+0", p), Error);
  CHECK_THROWS_AS(DecimalFP::parse("0.0123e+0", p), Error);
  CHECK_THROWS_AS(DecimalFP::parse("0.1234e+4", p), Error);
  CHECK_THROWS_AS(DecimalFP::parse("0.1234e4", p), Error);
  CHECK_THROWS_AS(DecimalFP::parse("1.1234e+0", p), Error);
}

TEST_CASE("modular operations") {
  ModularParams p{2, Rational(1, 2)};
  CHECK(mod_add(2, 1, p) == -2);
  CHECK(mod_mul(2, 2, p) == 2);
  for (long m = -2; m <= 2; ++m) CHECK(mod_add(0, m, p) == m);
  // floor, not truncation, for negative products: -1 * 1 * 1/2 = -1/2 -> -1
  CHECK(mod_mul(-1, 1, p) == -1);
}

TEST_CASE("modular approximations and group laws") {
  for (long M : {1L, 2L, 5L, 13L}) {
    for (const char* e : {"1/2", "1/3", "1/10", "1"}) {
      ModularParams p{M, q(e)};
      FiniteAlgebra alg = build_modular(p);
      Rational a = Rational(M) * p.epsilon;
      CHECK(check_approximation(alg, Region::closed(-a, a), Entourage(p.epsilon)).ok());
    }
  }
  for (long M = 1; M <= 20; ++M) {
    ModularParams p{M, Rational(1, 4)};
    FiniteAlgebra alg = build_modular(p);
    ElementId zero = static_cast<ElementId>(M);
    CHECK_FALSE(law_search(alg, Law::comm("+")));
    CHECK_FALSE(law_search(alg, Law::assoc("+")));
    CHECK_FALSE(law_search(alg, Law::identity("+", zero)));
    CHECK_FALSE(law_search(alg, Law::inverse("+", zero)));
  }
  for (long M : {10L, 12L}) {
    for (const char* e : {"1/4", "1/5"}) {
      FiniteAlgebra alg = build_modular({M, q(e)});
      auto w = law_search(alg, Law::distrib("*", "+"));
      REQUIRE(w);
      CHECK_FALSE(w->holds);
    }
  }
}

TEST_CASE("modular product error without wraparound") {
  for (long M : {3L, 17L, 50L}) {
    for (const char* e : {"1/2", "1/7", "3/10"}) {
      ModularParams p{M, q(e)};
      for (long k = -M; k <= M; ++k) {
        for (long m = -M; m <= M; ++m) {
          Rational exact = Rational(k) * p.epsilon * Rational(m) * p.epsilon;
          Integer f = floor_of(Rational(k * m) * p.epsilon);
          if (abs(f) > M) continue;
          REQUIRE(abs(exact - Rational(mod_mul(k, m, p)) * p.epsilon) < p.epsilon);
        }
      }
    }
  }
}

TEST_CASE("sufficient parameters for the reciprocal formula") {
  SufficientParams s = sufficient_params_inverse(Rational(2), Rational(1, 10));
  const Rational t(5, 2);
  const Rational target = t * t + Rational(1, 10);
  // independent bracket: (eps0 + t)^2 = t^2 + delta
  CHECK((s.eps0.lo() + t) * (s.eps0.lo() + t) <= target);
  CHECK((s.eps0.hi() + t) * (s.eps0.hi() + t) >= target);
  CHECK(s.eps0.lo() > q("0.01992"));
  CHECK(s.eps0.hi() < q("0.01993"));
  CHECK(s.a0.lo() > q("2.01992"));
  CHECK(s.a0.hi() < q("2.01993"));
  CHECK(s.a0_upper >= Rational(2) + s.eps0.hi());
  SufficientParams small = sufficient_params_inverse(Rational(2), Rational(1, 1000000000000));
  CHECK(small.eps0.hi() < Rational(1, 1000000000000));
  CHECK_THROWS_AS(sufficient_params_inverse(Rational(1), Rational(1)), Error);
}

TEST_CASE("A_PQ table lookups agree with decimal arithmetic") {
  std::mt19937_64 rng(11);
  for (FPParams params : {FPParams{1, 2}, FPParams{2, 3}, FPParams{1, 4}, FPParams{3, 2}}) {
    FiniteAlgebra alg = build_APQ(params);
    std::uniform_int_distribution<ElementId> pick(0, static_cast<ElementId>(alg.size() - 1));
    for (int i = 0; i < 3000; ++i) {
      ElementId a = pick(rng);
      ElementId b = pick(rng);
      DecimalFP x = fp_from_id(a, params);
      DecimalFP y = fp_from_id(b, params);
      CHECK(alg.apply("+", a, b) == fp_id(fp_round(x.value() + y.value(), params), params));
      CHECK(alg.apply("*", a, b) == fp_id(fp_round(x.value() * y.value(), params), params));
      CHECK(alg.embed(a) == x.value());
    }
  }
}
