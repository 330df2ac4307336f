#include "doctest.h"
#include "fapprox/approximation.hpp"
#include "fapprox/laws.hpp"
#include "fapprox/padic_systems.hpp"
#include "test_support.hpp"

using namespace fapprox;
using fapprox::testing::frac;

TEST_CASE("padic norm") {
  CHECK(padic_norm(PadicDigits::from_rational(Rational(8), 2)) == Rational(1, 8));
  CHECK(padic_norm(PadicDigits::from_rational(Rational(0), 2)) == 0);
  CHECK(padic_norm(PadicDigits::from_rational(Rational(1, 3), 3)) == 3);
  CHECK_THROWS_AS(PadicDigits::from_rational(Rational(1, 3), 2), Error);
  CHECK_THROWS_AS(PadicDigits::from_rational(Rational(-1), 2), Error);
}

TEST_CASE("padic norm is an ultrametric absolute value on small values") {
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    for (long a = 0; a < 40; ++a) {
      for (long b = 0; b < 40; ++b) {
        for (long s : {1L, static_cast<long>(p), static_cast<long>(p * p)}) {
          Rational x = frac(a, s);
          Rational y = frac(b, static_cast<long>(p));
          Rational nx = padic_norm(PadicDigits::from_rational(x, p));
          Rational ny = padic_norm(PadicDigits::from_rational(y, p));
          CHECK(padic_norm(PadicDigits::from_rational(x * y, p)) == nx * ny);
          CHECK(padic_norm(PadicDigits::from_rational(x + y, p)) <= std::max(nx, ny));
        }
      }
    }
  }
}

TEST_CASE("padic text form") {
  PadicDigits x = PadicDigits::from_rational(frac(7, 2), 2);
  CHECK(x.to_string() == "2^-1 * (1 1 1)");
  CHECK(PadicDigits::parse("2^-1 * (1 1 1)", 2) == x);
  CHECK(PadicDigits::parse("3^2 * (0 2)", 3).value() == 54);
  CHECK(PadicDigits::parse("3^0 * ()", 3).is_zero());
  for (long n = 0; n < 200; ++n) {
    PadicDigits d = PadicDigits::from_rational(frac(n, 9), 3);
    CHECK(PadicDigits::parse(d.to_string(), 3) == d);
    CHECK(d.value() == frac(n, 9));
  }
  CHECK_THROWS_AS(PadicDigits::parse("3^0 * (3)", 3), Error);
  CHECK_THROWS_AS(PadicDigits::parse("2^0 * (1)", 3), Error);
  CHECK_THROWS_AS(PadicDigits::parse("3^x * (1)", 3), Error);
}

TEST_CASE("K_n") {
  FiniteAlgebra k3 = build_Kn(2, 3);
  CHECK(k3.size() == 8);
  CHECK(k3.apply("+", 3, 6) == 1);
  CHECK(check_approximation(k3, PadicBall{2, 0}, Entourage(Rational(1, 8))).ok());
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    for (unsigned n = 1; n <= 3; ++n) {
      FiniteAlgebra k = build_Kn(p, n);
      CHECK_FALSE(law_search(k, Law::assoc("+")));
      CHECK_FALSE(law_search(k, Law::assoc("*")));
      CHECK_FALSE(law_search(k, Law::comm("+")));
      CHECK_FALSE(law_search(k, Law::comm("*")));
      CHECK_FALSE(law_search(k, Law::distrib("*", "+")));
      CHECK_FALSE(law_search(k, Law::inverse("+", 0)));
    }
  }
  CHECK_THROWS_AS(build_Kn(4, 2), Error);
  CHECK_THROWS_AS(build_Kn(2, 17), Error);
}

TEST_CASE("hat operations") {
  HmnParams h{2, 1, 2};
  auto id = [&](const Rational& a) { return hmn_id(a, h); };
  CHECK(hat_add(id(frac(7, 2)), id(frac(1, 2)), h) == id(Rational(0)));
  for (ElementId a = 0; a < 8; ++a) CHECK(hat_add(a, 0, h) == a);
  CHECK(hat_mul(id(frac(1, 2)), id(frac(1, 2)), h) == id(Rational(0)));
  ElementId left = hat_mul(hat_mul(id(frac(1, 2)), id(frac(1, 2)), h), id(Rational(2)), h);
  ElementId right = hat_mul(id(frac(1, 2)), hat_mul(id(frac(1, 2)), id(Rational(2)), h), h);
  CHECK(hmn_value(left, h) == 0);
  CHECK(hmn_value(right, h) == frac(1, 2));
}

TEST_CASE("hat_mul keeps digits c_m .. c_{2m+n-1}") {
  // Independent digit-expansion oracle.
  for (unsigned long p : {2ul, 3ul}) {
    for (unsigned m = 0; m <= 2; ++m) {
      for (unsigned n = m + 1; n <= 3; ++n) {
        HmnParams h{p, m, n};
        const auto size = h.modulus();
        for (ElementId a = 0; a < size; ++a) {
          for (ElementId b = 0; b < size; ++b) {
            std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
            std::vector<unsigned> c;
            while (prod) {
              c.push_back(static_cast<unsigned>(prod % p));
              prod /= p;
            }
            Rational expect = 0;
            for (unsigned k = m; k <= 2 * m + n - 1; ++k) {
              if (k < c.size()) expect += Rational(c[k]) * pow_int(Rational(p), static_cast<long>(k) - 2 * m);
            }
            REQUIRE(hmn_value(hat_mul(a, b, h), h) == expect);
          }
        }
      }
    }
  }
}

TEST_CASE("hat error bounds, exhaustive") {
  for (unsigned long p : {2ul, 3ul}) {
    for (unsigned m = 0; m <= 2; ++m) {
      for (unsigned n = m + 1; n <= 4; ++n) {
        HmnParams h{p, m, n};
        if (h.modulus() > 2000) continue;
        const Rational bound = pow_int(Rational(p), -static_cast<long>(n));
        for (ElementId a = 0; a < h.modulus(); ++a) {
          for (ElementId b = 0; b < h.modulus(); ++b) {
            Rational x = hmn_value(a, h);
            Rational y = hmn_value(b, h);
            REQUIRE(padic_abs(x + y - hmn_value(hat_add(a, b, h), h), p) <= bound);
            bool in_ball = padic_abs(x * y, p) <= pow_int(Rational(p), m);
            REQUIRE(in_ball == hat_product_in_ball(a, b, h));
            if (in_ball) REQUIRE(padic_abs(x * y - hmn_value(hat_mul(a, b, h), h), p) <= bound);
          }
        }
      }
    }
  }
}

TEST_CASE("H_{m,n} structure") {
  for (unsigned long p : {2ul, 3ul}) {
    for (unsigned n = 1; n <= 3; ++n) {
      // H_{0,n} coincides with Z/p^n entry for entry
      FiniteAlgebra h0 = build_Hmn({p, 0, n});
      const auto size = static_cast<ElementId>(h0.size());
      for (ElementId a = 0; a < size; ++a) {
        for (ElementId b = 0; b < size; ++b) {
          CHECK(h0.apply("+", a, b) == (a + b) % size);
          CHECK(h0.apply("*", a, b) == (a * b) % size);
        }
      }
    }
  }
  for (unsigned long p : {2ul, 3ul}) {
    for (unsigned m = 1; m <= 2; ++m) {
      for (unsigned n = m + 1; n <= 3; ++n) {
        HmnParams h{p, m, n};
        FiniteAlgebra alg = build_Hmn(h);
        FiniteAlgebra k = build_Kn(p, m + n);
        const Rational scale = pow_int(Rational(p), m);
        // x -> p^m x is an additive isomorphism onto K_{m+n}
        for (ElementId a = 0; a < alg.size(); ++a) {
          for (ElementId b = 0; b < alg.size(); ++b) {
            Rational image = alg.embed(alg.apply("+", a, b)) * scale;
            Rational sum = k.embed(k.apply("+", hmn_id(alg.embed(a), h), hmn_id(alg.embed(b), h)));
            REQUIRE(image == sum);
          }
        }
        CHECK(check_approximation(alg, PadicBall{p, static_cast<long>(m)},
                                  Entourage(pow_int(Rational(p), -static_cast<long>(n))))
                  .ok());
        // distributivity fails at (1/p^m, (p-1)/p^m, 1/p)
        Law d = Law::distrib("*", "+");
        LawInstance inst = law_instance(alg, d, {hmn_id(1 / scale, h), hmn_id(Rational(p - 1) / scale, h),
                                                  hmn_id(frac(1, static_cast<long>(p)), h)});
        CHECK_FALSE(inst.holds);
      }
    }
  }
  CHECK(check_approximation(build_Hmn({2, 1, 2}), PadicBall{2, 1}, Entourage(Rational(1, 4))).ok());
  CHECK_THROWS_AS(build_Hmn({2, 2, 2}), Error);
}

TEST_CASE("H_{1,2} law witnesses") {
  HmnParams h{2, 1, 2};
  FiniteAlgebra alg = build_Hmn(h);
  auto assoc = law_search(alg, Law::assoc("*"));
  REQUIRE(assoc);
  CHECK(alg.embed(assoc->tuple[0]) == frac(1, 2));
  CHECK(alg.embed(assoc->tuple[1]) == frac(1, 2));
  CHECK(alg.embed(assoc->tuple[2]) == 2);
  CHECK(alg.embed(assoc->lhs) == 0);
  CHECK(alg.embed(assoc->rhs) == frac(1, 2));
  auto dist = law_search(alg, Law::distrib("*", "+"));
  REQUIRE(dist);
  for (ElementId e : dist->tuple) CHECK(alg.embed(e) == frac(1, 2));
  CHECK_FALSE(law_search(alg, Law::comm("+")));
  CHECK_FALSE(law_search(alg, Law::assoc("+")));
}
