#include "doctest.h"
#include "fapprox/ring_probe.hpp"
#include "probe_oracle.hpp"
#include "test_support.hpp"

using namespace fapprox;
using fapprox::testing::frac;
using namespace fapprox::testing;


TEST_CASE("rings: Z/n and products") {
  Ring z5 = build_ring(RingSpec::zn(5));
  CHECK(z5.name == "Z/5");
  CHECK(z5.algebra.size() == 5);
  CHECK_FALSE(ring_axiom_failure(z5.algebra));
  CHECK(z5.algebra.apply("*", 3, 4) == 2);

  // Z/2 x Z/3 is Z/6 under n -> (n mod 2, n mod 3).
  Ring prod = build_ring(RingSpec::product({2, 3}));
  Ring z6 = build_ring(RingSpec::zn(6));
  auto crt = [](ElementId n) { return static_cast<ElementId>(n % 2 + 2 * (n % 3)); };
  for (ElementId a = 0; a < 6; ++a) {
    for (ElementId b = 0; b < 6; ++b) {
      CHECK(crt(z6.algebra.apply("+", a, b)) == prod.algebra.apply("+", crt(a), crt(b)));
      CHECK(crt(z6.algebra.apply("*", a, b)) == prod.algebra.apply("*", crt(a), crt(b)));
    }
  }
}

TEST_CASE("rings: Galois fields") {
  CHECK(irreducible_polynomial(2, 2) == std::vector<unsigned long>{1, 1, 1});
  CHECK(irreducible_polynomial(2, 3) == std::vector<unsigned long>{1, 1, 0, 1});
  CHECK(irreducible_polynomial(3, 2) == std::vector<unsigned long>{1, 0, 1});
  // GF(4) on 0, 1, x, x + 1 with x^2 = x + 1.
  Ring gf4 = build_ring(RingSpec::galois(2, 2));
  const ElementId expected[4][4] = {{0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
  for (ElementId a = 0; a < 4; ++a) {
    for (ElementId b = 0; b < 4; ++b) {
      CHECK(gf4.algebra.apply("*", a, b) == expected[a][b]);
      CHECK(gf4.algebra.apply("+", a, b) == (a ^ b));
    }
  }
  for (auto spec : {RingSpec::galois(2, 3), RingSpec::galois(3, 2), RingSpec::galois(5, 2)}) {
    Ring f = build_ring(spec);
    CAPTURE(f.name);
    // Every nonzero element has a multiplicative inverse (identity is id 1).
    for (ElementId a = 1; a < f.algebra.size(); ++a) {
      bool inverse = false;
      for (ElementId b = 1; b < f.algebra.size(); ++b) inverse = inverse || f.algebra.apply("*", a, b) == 1;
      CHECK(inverse);
    }
  }
  CHECK_THROWS(build_ring(RingSpec::galois(4, 2)));
}

TEST_CASE("rings: upper triangular matrices, limits, broken tables") {
  Ring ut = build_ring(RingSpec::upper_triangular(2));
  CHECK(ut.algebra.size() == 8);
  bool commutative = true;
  for (ElementId a = 0; a < 8; ++a) {
    for (ElementId b = 0; b < 8; ++b) commutative = commutative && ut.algebra.apply("*", a, b) == ut.algebra.apply("*", b, a);
  }
  CHECK_FALSE(commutative);
  CHECK(enumerate_rings({RingSpec::zn(3), RingSpec::upper_triangular(3)}).size() == 2);
  CHECK_THROWS(enumerate_rings({RingSpec::zn(600)}));
  CHECK_THROWS(enumerate_rings({RingSpec::zn(20)}, 10));

  std::vector<ElementId> add = {0, 1, 2, 1, 2, 0, 2, 0, 1};
  std::vector<ElementId> mul = {0, 0, 0, 0, 1, 2, 0, 2, 2};  // 2*2 should be 1
  FiniteAlgebra broken = fapprox::testing::real_algebra({0, 1, 2}, add, mul);
  auto failure = ring_axiom_failure(broken);
  REQUIRE(failure);
}

TEST_CASE("embedding error of the balanced residue embedding") {
  // N = 2K + 1 residues onto the 2K + 1 grid points of [-2, 2].
  const Rational a = 2;
  for (long K : {4L, 8L, 16L}) {
    const long n = 2 * K + 1;
    const Rational eps = frac(2, K);
    Ring z = build_ring(RingSpec::zn(static_cast<unsigned long>(n)));
    std::vector<long> k;
    for (long x = 0; x < n; ++x) k.push_back(bal(x, n));
    EmbeddingError e = embedding_error(z.algebra, k, a, eps);
    EmbeddingError oracle = direct_error(z.algebra, k, a, eps);
    CHECK(e.additive == oracle.additive);
    CHECK(e.multiplicative == oracle.multiplicative);
    CHECK(e.additive == 0);
    CHECK(e.multiplicative > 1);
  }
  Ring z4 = build_ring(RingSpec::zn(4));
  CHECK_THROWS_AS(best_embedding_error(z4.algebra, {1, frac(1, 2)}), InfeasibleError);
}

TEST_CASE("search optimum equals the brute-force optimum at the smallest cell") {
  for (auto objective : {ProbeObjective::combined, ProbeObjective::multiplicative, ProbeObjective::additive}) {
    for (unsigned long n : {5ul, 6ul}) {
      Ring z = build_ring(RingSpec::zn(n));
      EmbeddingSearchConfig cfg;
      cfg.a = 1;
      cfg.epsilon = frac(1, 2);
      cfg.objective = objective;
      EmbeddingResult r = best_embedding_error(z.algebra, cfg);
      CAPTURE(n);
      CHECK(r.error.get(objective) == brute_force_optimum(z.algebra, 1, frac(1, 2), objective));
      CHECK(r.error.additive == direct_error(z.algebra, r.grid_index, 1, frac(1, 2)).additive);
      CHECK(r.error.multiplicative == direct_error(z.algebra, r.grid_index, 1, frac(1, 2)).multiplicative);
    }
  }
  Ring ut = build_ring(RingSpec::product({2, 3}));
  EmbeddingSearchConfig cfg{1, frac(1, 2)};
  CHECK(best_embedding_error(ut.algebra, cfg).error.combined() ==
        brute_force_optimum(ut.algebra, 1, frac(1, 2), ProbeObjective::combined));
}

TEST_CASE("search is deterministic per seed and attaches embeddings") {
  Ring z = build_ring(RingSpec::zn(11));
  EmbeddingSearchConfig cfg{2, frac(1, 2)};
  cfg.iterations = 2000;
  EmbeddingResult r1 = best_embedding_error(z.algebra, cfg);
  EmbeddingResult r2 = best_embedding_error(z.algebra, cfg);
  CHECK(r1.grid_index == r2.grid_index);
  FiniteAlgebra alg = r1.embedded(z.algebra, cfg.epsilon);
  CHECK(alg.embedded());
  for (ElementId x = 0; x < alg.size(); ++x) CHECK(alg.embed(x) == Rational(r1.grid_index[x]) * cfg.epsilon);
}

TEST_CASE("probe report") {
  EmbeddingSearchConfig cfg;
  cfg.iterations = 2000;
  std::vector<ProbeCell> ladder = {{1, frac(1, 2)}, {2, frac(1, 2)}};
  ProbeReport r = probe_report({zn_family(2), fixed_family("fields", {RingSpec::galois(2, 2), RingSpec::zn(13)})},
                               ladder, cfg);
  REQUIRE(r.entries.size() == 6);
  CHECK(r.entries[0].family == "Z/N");
  CHECK(r.entries[0].candidates == 3);
  CHECK(r.entries[2].family == "fields");
  CHECK(r.entries[2].candidates == 1);  // GF(4) is below the 5 grid points
  CHECK(r.entries[2].best_ring == "Z/13");
  for (const auto& e : r.entries) {
    CHECK(e.feasible);
    if (e.control) {
      CHECK(e.error.combined() <= 1);
    } else {
      CHECK(e.error.combined() > 1);
    }
  }
  CHECK(r.to_json().find("evidence, not proof") != std::string::npos);
  CHECK(r.to_table().find("canonical grid") != std::string::npos);
  ProbeReport empty = probe_report({}, ladder, cfg);
  CHECK(empty.entries.empty());
}
