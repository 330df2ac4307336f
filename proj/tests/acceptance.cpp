// Acceptance criteria 1-10: one PASS/FAIL line each.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "fapprox/approximation.hpp"
#include "fapprox/laws.hpp"
#include "fapprox/padic_systems.hpp"
#include "fapprox/pbf.hpp"
#include "fapprox/real_systems.hpp"
#include "fapprox/repro.hpp"
#include "fapprox/ring_probe.hpp"
#include "pbf_oracle.hpp"
#include "probe_oracle.hpp"
#include "test_support.hpp"

using namespace fapprox;
using namespace fapprox::testing;

namespace {

// Pinned limits.
constexpr double kLimitKn = 10.0;
constexpr double kLimitHmn = 60.0;
constexpr double kLimitGroups = 30.0;
constexpr double kLimitSweep = 120.0;
constexpr double kLimitLinsys = 5.0;
constexpr int kInstancesPerClause = 500;
constexpr int kBruteForceInstances = 200;
constexpr std::size_t kBruteForceCarrier = 12;
constexpr int kRoundTrips = 1000;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& body, double limit = 0) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit > 0 && secs >= limit) {
    o.pass = false;
    o.detail += "; over the time limit";
  }
  char timing[64];
  if (limit > 0) {
    std::snprintf(timing, sizeof timing, "%.2f s, limit %.0f s", secs, limit);
  } else {
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
  }
  std::cout << (o.pass ? "PASS" : "FAIL") << " " << id << " " << name << ": " << o.detail << " (" << timing << ")"
            << std::endl;
  if (!o.pass) ++failures;
}

Rational pw(unsigned long p, long e) { return pow_int(Rational(static_cast<long>(p)), e); }

FiniteAlgebra grid(const Rational& a, const Rational& step) {
  return canonical_approximation(AmbientStructure::real_field(), Region::closed(-a, a), Entourage(step), step);
}

// ---- 1 ----

Outcome kn_soundness() {
  std::size_t checked = 0;
  std::size_t violations = 0;
  bool ok = true;
  for (unsigned long p : {2ul, 3ul}) {
    for (unsigned n = 1; n <= 4; ++n) {
      FiniteAlgebra k = build_Kn(p, n);
      ApproximationReport r = check_approximation(k, PadicBall{p, 0}, Entourage(pw(p, -static_cast<long>(n))));
      ok = ok && r.ok();
      violations += r.violation_count;
      ++checked;
    }
  }
  return {ok && violations == 0, std::to_string(checked) + " (p, n) pairs, " + std::to_string(violations) + " violations"};
}

// ---- 2 ----

Outcome hmn_bounds() {
  const unsigned long p = 2;
  std::size_t pairs = 0;
  std::size_t add_bad = 0;
  std::size_t mul_bad = 0;
  std::size_t conditional = 0;
  for (unsigned m = 0; m <= 2; ++m) {
    for (unsigned n = std::max(1u, m + 1); n <= 4; ++n) {
      HmnParams h{p, m, n};
      FiniteAlgebra alg = build_Hmn(h);
      const Rational bound = pw(p, -static_cast<long>(n));
      const Rational ball = pw(p, m);
      for (ElementId a = 0; a < alg.size(); ++a) {
        for (ElementId b = 0; b < alg.size(); ++b) {
          const Rational x = alg.embed(a);
          const Rational y = alg.embed(b);
          ++pairs;
          if (padic_abs(x + y - alg.embed(alg.apply("+", a, b)), p) > bound) ++add_bad;
          if (padic_abs(x * y, p) <= ball) {
            ++conditional;
            if (padic_abs(x * y - alg.embed(alg.apply("*", a, b)), p) > bound) ++mul_bad;
          }
        }
      }
    }
  }
  std::ostringstream d;
  d << pairs << " pairs; sum violations " << add_bad << "; product violations " << mul_bad << " over " << conditional
    << " pairs with the product in the ball";
  return {add_bad == 0 && mul_bad == 0, d.str()};
}

// ---- 3 ----

Outcome counterexamples() {
  std::ostringstream d;
  bool ok = true;
  // Cancellation in A_PQ at Q = 4.
  {
    FPParams fp{1, 4};
    FiniteAlgebra alg = build_APQ(fp);
    const ElementId a = fp_id(fp_round(parse_rational("0.6006"), fp), fp);
    LawSearchOptions opts;
    opts.pins = {std::vector<ElementId>{a}, std::vector<ElementId>{a}, std::nullopt};
    opts.restrict = Region::closed(parse_rational("0.6005"), parse_rational("0.6006"));
    auto w = law_search(alg, Law::cancel("+"), opts);
    bool exact = w && alg.embed(w->tuple[0]) == parse_rational("0.6006") &&
                 alg.embed(w->tuple[1]) == parse_rational("0.6006") && alg.embed(w->tuple[2]) == parse_rational("0.6005") &&
                 w->lhs == w->rhs;
    ok = ok && exact;
    d << "cancellation (0.6006, 0.6006, 0.6005) " << (exact ? "reproduced" : "MISSING");
  }
  // Associativity in H_{1,2}: (1/2 * 1/2) * 2 = 0, 1/2 * (1/2 * 2) = 1/2.
  {
    HmnParams h{2, 1, 2};
    FiniteAlgebra alg = build_Hmn(h);
    auto w = law_search(alg, Law::assoc("*"));
    const Rational half(1, 2);
    bool exact = w && alg.embed(w->tuple[0]) == half && alg.embed(w->tuple[1]) == half && alg.embed(w->tuple[2]) == 2 &&
                 alg.embed(w->lhs) == 0 && alg.embed(w->rhs) == half;
    ok = ok && exact;
    d << "; H_{1,2} associativity " << (exact ? "reproduced" : "MISSING");
  }
  // Distributivity in H_{m,n}: c/p^m * 1/p = 0 for 0 <= c < p, while
  // (1/p^m + (p-1)/p^m) * 1/p = 1/p^m.
  {
    std::size_t cases = 0;
    bool all = true;
    for (unsigned long p : {2ul, 3ul}) {
      for (unsigned m = 1; m <= 2; ++m) {
        for (unsigned n = m + 1; n <= m + 2; ++n) {
          HmnParams h{p, m, n};
          FiniteAlgebra alg = build_Hmn(h);
          const Rational unit = pw(p, -static_cast<long>(m));
          const ElementId inv_p = hmn_id(Rational(1, static_cast<long>(p)), h);
          for (unsigned long c = 0; c < p; ++c) {
            all = all && alg.embed(alg.apply("*", hmn_id(Rational(static_cast<long>(c)) * unit, h), inv_p)) == 0;
          }
          const ElementId one = hmn_id(unit, h);
          const ElementId rest = hmn_id(Rational(static_cast<long>(p - 1)) * unit, h);
          const Rational lhs = alg.embed(alg.apply("*", alg.apply("+", one, rest), inv_p));
          const Rational rhs = alg.embed(alg.apply("+", alg.apply("*", one, inv_p), alg.apply("*", rest, inv_p)));
          all = all && lhs == unit && rhs == 0 && !law_instance(alg, Law::distrib("*", "+"), {one, rest, inv_p}).holds;
          ++cases;
        }
      }
    }
    ok = ok && all;
    d << "; distributivity witness " << (all ? "reproduced" : "MISSING") << " in " << cases << " H_{m,n}";
  }
  return {ok, d.str()};
}

// ---- 4 ----

Outcome abelian_groups() {
  std::size_t modular = 0;
  std::size_t bad = 0;
  for (long M = 1; M <= 50; ++M) {
    for (const Rational& eps : {Rational(1, 4), Rational(1, 10)}) {
      FiniteAlgebra alg = build_modular({M, eps});
      const ElementId zero = static_cast<ElementId>(M);
      for (const Law& law : {Law::assoc("+"), Law::comm("+"), Law::identity("+", zero), Law::inverse("+", zero)}) {
        if (law_search(alg, law)) ++bad;
      }
      ++modular;
    }
  }
  std::size_t hmn = 0;
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul}) {
    for (unsigned s = 1; pw(p, s) <= 2048; ++s) {
      for (unsigned m = 0; 2 * m < s; ++m) {
        const unsigned n = s - m;
        HmnParams h{p, m, n};
        FiniteAlgebra alg = build_Hmn(h);
        FiniteAlgebra k = build_Kn(p, s);
        // p^m alpha is the residue with the same id in K_{m+n}.
        const Rational scale = pw(p, m);
        bool iso = alg.size() == k.size();
        for (ElementId a = 0; iso && a < alg.size(); ++a) iso = alg.embed(a) * scale == k.embed(a);
        for (ElementId a = 0; iso && a < alg.size(); ++a) {
          for (ElementId b = 0; iso && b < alg.size(); ++b) iso = alg.apply("+", a, b) == k.apply("+", a, b);
        }
        if (!iso) ++bad;
        ++hmn;
      }
    }
  }
  return {bad == 0, std::to_string(modular) + " modular algebras (M <= 50), " + std::to_string(hmn) +
                        " H_{m,n} with p^{m+n} <= 2048; " + std::to_string(bad) + " violations"};
}

// ---- 5 ----

std::vector<FiniteAlgebra> property_algebras() {
  return {grid(3, Rational(1, 4)), build_modular({8, Rational(1, 4)}), perturbed_builder(11).build({2, Rational(1, 4)})};
}

Assignment random_tuple(FormulaGen& gen, const FiniteAlgebra& alg) {
  return {{"s", static_cast<ElementId>(gen.pick(0, static_cast<long>(alg.size()) - 1))}};
}

Outcome monotonicity() {
  FormulaGen gen(5150);
  gen.free = {"s"};
  auto algebras = property_algebras();
  const Rational eps[] = {Rational(1, 8), Rational(1, 4), Rational(1, 2), Rational(1)};
  std::size_t violations[5] = {0, 0, 0, 0, 0};
  int exercised[5] = {0, 0, 0, 0, 0};

  // Monotone in eps.
  for (int i = 0; i < kInstancesPerClause; ++i) {
    Formula f = gen.formula(static_cast<std::size_t>(gen.pick(1, 3)));
    const auto& alg = algebras[static_cast<std::size_t>(i) % algebras.size()];
    Assignment env = random_tuple(gen, alg);
    const long lo = gen.pick(0, 2);
    const long hi = gen.pick(lo + 1, 3);
    const bool fine = eval_finite(approximate(f, eps[lo]), alg, env).value;
    const bool coarse = eval_finite(approximate(f, eps[hi]), alg, env).value;
    if (fine) ++exercised[0];
    if (fine && !coarse) ++violations[0];
  }
  // Monotone in the bounds under c << c'.
  for (int done = 0; done < kInstancesPerClause;) {
    Formula f = approximate(gen.formula(static_cast<std::size_t>(gen.pick(1, 3))), eps[gen.pick(0, 3)]);
    const auto& alg = algebras[static_cast<std::size_t>(done) % algebras.size()];
    Assignment env = random_tuple(gen, alg);
    BoundTuple c = bounds_of(f);
    BoundTuple wide;
    try {
      wide = widen(f, c, frac(gen.pick(1, 3), 8));
    } catch (const Error&) {
      continue;
    }
    if (!check_ll(f, c, wide)) {
      ++violations[1];
      ++done;
      continue;
    }
    const bool at_c = eval_finite(f, alg, env).value;
    if (at_c) ++exercised[1];
    if (at_c && !eval_finite(with_bounds(f, wide), alg, env).value) ++violations[1];
    ++done;
  }
  // Positivity: exact truth survives every approximation.
  for (int i = 0; i < kInstancesPerClause; ++i) {
    Formula f = gen.formula(static_cast<std::size_t>(gen.pick(1, 3)));
    const auto& alg = algebras[static_cast<std::size_t>(i) % algebras.size()];
    Assignment env = random_tuple(gen, alg);
    if (!eval_finite(f, alg, env).value) continue;
    ++exercised[2];
    if (!eval_finite(approximate(f, eps[gen.pick(0, 3)]), alg, env).value) ++violations[2];
  }
  // Exact ambient oracles: truth at c implies truth at c' >> c.
  for (int i = 0; i < kInstancesPerClause; ++i) {
    auto r = [&](long lo, long hi, long den) { return frac(gen.pick(lo, hi), den); };
    bool at_c = false;
    bool at_wide = false;
    switch (i % 4) {
      case 0: {
        const Rational c = 1 + r(1, 40, 20);
        const Rational b = 1 + r(1, 60, 20);
        const Rational shrink = r(1, 10, 40);
        const Rational grow = r(1, 10, 40);
        auto ring = [](const Rational& x, Openness k) {
          return Region::union_of({Interval(-x, -1 / x, k), Interval(1 / x, x, k)});
        };
        const Rational c2 = std::max<Rational>(c - shrink, Rational(101, 100));
        if (c2 >= c) continue;
        Region C = ring(c, Openness::open);
        Region B = ring(b, Openness::closed);
        Region C2 = ring(c2, Openness::open);
        Region B2 = ring(b + grow, Openness::closed);
        Formula f = parse_formula("forall x in " + format_region(C) + " exists y in " + format_region(B) + " : x*y = 1");
        if (!check_ll(f, {C, B}, {C2, B2})) {
          ++violations[3];
          continue;
        }
        at_c = analytic::reciprocal_holds(C, B);
        at_wide = analytic::reciprocal_holds(C2, B2);
        break;
      }
      case 1: {
        const Rational b = r(1, 40, 10);
        const Rational x = r(-40, 40, 10);
        const Rational y = r(-40, 40, 10);
        at_c = analytic::square_gap_holds(Region::closed(-b, b), x, y);
        at_wide = analytic::square_gap_holds(Region::closed(-b - r(1, 10, 10), b + r(1, 10, 10)), x, y);
        break;
      }
      case 2: {
        const Rational b = r(1, 40, 10);
        const Rational x = r(-40, 40, 10);
        const Rational y = r(-40, 40, 10);
        at_c = analytic::inverse_square_gap_holds(Region::closed(-b, b), x, y);
        at_wide = analytic::inverse_square_gap_holds(Region::closed(-b - r(1, 10, 10), b + r(1, 10, 10)), x, y);
        break;
      }
      default: {
        const Rational c = r(1, 40, 10);
        const Rational alpha = r(1, 9, 10);
        const Rational x = r(-40, 40, 20);
        const Rational y = r(-40, 40, 20);
        at_c = analytic::approx_inverse_square_gap_holds(c, alpha, x, y);
        at_wide = analytic::approx_inverse_square_gap_holds(c + r(1, 10, 10), alpha, x, y);
        break;
      }
    }
    if (at_c) ++exercised[3];
    if (at_c && !at_wide) ++violations[3];
  }
  // Brute-force agreement on small carriers.
  std::vector<FiniteAlgebra> small = {grid(1, Rational(1, 4)), build_modular({5, Rational(1, 4)}),
                                      perturbed_builder(3).build({1, Rational(1, 4)})};
  bool small_ok = true;
  for (const auto& alg : small) small_ok = small_ok && alg.size() <= kBruteForceCarrier;
  for (int i = 0; i < kBruteForceInstances; ++i) {
    Formula f = gen.formula(static_cast<std::size_t>(gen.pick(1, 3)));
    const auto& alg = small[static_cast<std::size_t>(i) % small.size()];
    Assignment env = random_tuple(gen, alg);
    const bool fast = eval_finite(f, alg, env).value;
    if (fast) ++exercised[4];
    if (fast != bf_eval(f, alg, Env(env.begin(), env.end()))) ++violations[4];
  }

  std::ostringstream d;
  const char* names[] = {"eps", "bounds", "positivity", "analytic", "brute force"};
  bool ok = small_ok;
  for (int k = 0; k < 5; ++k) {
    d << (k ? "; " : "") << names[k] << " " << violations[k] << " violations (" << exercised[k] << " true cases)";
    ok = ok && violations[k] == 0 && exercised[k] > 0;
  }
  return {ok, d.str()};
}

// ---- 6 ----

Outcome reciprocal_threshold() {
  const Rational b = 2;
  const Rational delta(1, 10);
  SufficientParams sp = sufficient_params_inverse(b, delta);
  const double eps0 = std::sqrt(6.25 + 0.1) - 2.5;
  const double a0 = std::max(2 + eps0, (4 + eps0) * eps0 + 1);
  bool ok = std::abs(sp.eps0.value.get_d() - eps0) < 1e-12 && std::abs(sp.a0.value.get_d() - a0) < 1e-12;

  auto ring = [](const Rational& x, Openness k) {
    return Region::union_of({Interval(-x, -1 / x, k), Interval(1 / x, x, k)});
  };
  const Rational d(7, 4);
  SweepConfig cfg;
  cfg.formula = parse_formula("forall x in " + format_region(ring(d, Openness::open)) + " exists y in " +
                              format_region(ring(d, Openness::closed)) + " : x*y = 1");
  cfg.c = bounds_of(cfg.formula);
  cfg.c_prime = {ring(Rational(3, 2), Openness::open), ring(b, Openness::closed)};
  cfg.w_prime = delta;
  cfg.ladder = {{1, Rational(1, 4)},      {Rational(3, 2), Rational(1, 8)}, {2, Rational(1, 16)},
                {Rational(5, 2), Rational(1, 64)}, {3, Rational(1, 128)},          {4, Rational(1, 256)}};
  cfg.builders = {canonical_builder(), apq_builder(), modular_builder()};
  SweepReport r = sweep(cfg);
  std::size_t beyond = 0;
  std::size_t beyond_true = 0;
  std::size_t coarse_false = 0;
  for (const auto& cell : r.cells) {
    if (cell.cell.a > sp.a0_upper && cell.cell.epsilon < sp.eps0_lower) {
      ++beyond;
      beyond_true += cell.verdict;
    } else if (!cell.verdict) {
      ++coarse_false;
    }
  }
  ok = ok && beyond > 0 && beyond_true == beyond && coarse_false > 0;
  char buf[200];
  std::snprintf(buf, sizeof buf, "a0 = %.7f, eps0 = %.7f; %zu/%zu cells beyond true; %zu coarser cells false", a0, eps0,
                beyond_true, beyond, coarse_false);
  return {ok, buf};
}

// ---- 7 ----

Outcome inverse_square_gap() {
  const Rational c = 2;
  const Rational alpha(1, 2);
  const Rational a = 10;
  const Rational eps(1, 1024);
  const Rational gap = (1 - alpha) / (c * c);
  Formula f = approximate(parse_formula("exists z in [-2, 2] : (y + -1*x)*z*z = 1"), alpha);
  FiniteAlgebra alg = grid(a, eps);
  std::size_t checked = 0;
  std::size_t band = 0;
  std::size_t bad = 0;
  auto check = [&](const Rational& xi, const Rational& eta) {
    if (abs(eta - xi - gap) < eps) {
      ++band;
      return;
    }
    const ElementId x = nearest_element(alg, xi);
    const ElementId y = nearest_element(alg, eta);
    if (alg.embed(x) != xi || alg.embed(y) != eta) throw Error("pair off the carrier: " + format_number(xi) + " -> " + format_number(alg.embed(x)) + ", " + format_number(eta) + " -> " + format_number(alg.embed(y)));
    ++checked;
    if (eval_finite(f, alg, {{"x", x}, {"y", y}}).value != (eta > xi + gap)) ++bad;
  };
  // The 1/16 lattice of [-1, 1]^2.
  for (long i = -16; i <= 16; ++i) {
    for (long j = -16; j <= 16; ++j) check(frac(i, 16), frac(j, 16));
  }
  // For a few xi: every carrier element within 1/32 of the boundary, and a
  // 1/128 stride over the rest of [xi - 1/4, xi + 1/2].
  for (const Rational& xi : {Rational(-1), Rational(-1, 2), Rational(0), Rational(341, 1024), Rational(1)}) {
    for (Rational eta = xi - Rational(1, 4); eta <= xi + Rational(1, 2); eta += eps) {
      const bool near = abs(eta - xi - gap) <= Rational(1, 32);
      if (near || sgn(floor_of(eta * 128) - eta * 128) == 0) check(xi, eta);
    }
  }
  return {bad == 0, "a = 10, eps = 1/1024: " + std::to_string(checked) + " pairs, " + std::to_string(bad) +
                        " violations, " + std::to_string(band) + " in the boundary band"};
}

// ---- 8 ----

Outcome linsys() {
  LinsysReport r = repro_linsys({});
  bool ok = r.levels.size() == 2 && r.distances.size() == 1;
  std::ostringstream d;
  for (const auto& l : r.levels) {
    const bool res_ok = !l.singular && l.residual_bound <= pow_int(10, 1 - static_cast<long>(l.Q));
    ok = ok && res_ok;
    char buf[160];
    std::snprintf(buf, sizeof buf, "Q=%u: x=%.10f y=%.10f |res|<=%.2e; ", l.Q, l.x.value().get_d(), l.y.value().get_d(),
                  l.residual_bound.get_d());
    d << buf;
  }
  if (!r.distances.empty()) {
    ok = ok && r.distances[0].value > 1;
    d << "distance " << r.distances[0].value.get_d();
  }
  return {ok, d.str()};
}

// ---- 9 ----

Outcome ring_probe() {
  EmbeddingSearchConfig cfg;
  std::vector<ProbeCell> ladder = {{2, Rational(1, 2)}, {2, Rational(1, 4)}, {2, Rational(1, 8)}};
  ProbeReport r = probe_report({zn_family(4)}, ladder, cfg, true);
  bool ok = true;
  std::ostringstream d;
  d << "Z/N mul component:";
  for (const auto& e : r.entries) {
    if (e.control) {
      ok = ok && e.feasible && e.error.combined() <= 1;
    } else {
      ok = ok && e.feasible && e.error.multiplicative > 1;
      d << " " << e.error.multiplicative.get_d();
    }
  }
  d << "; control:";
  for (const auto& e : r.entries) {
    if (e.control) d << " " << e.error.combined().get_d();
  }
  // Smallest instance: a = 1, eps = 1/2 (5 grid points), rings of order <= 6.
  EmbeddingSearchConfig small{1, Rational(1, 2)};
  std::size_t compared = 0;
  bool equal = true;
  for (const RingSpec& spec : {RingSpec::zn(5), RingSpec::zn(6), RingSpec::product({2, 3})}) {
    Ring ring = build_ring(spec);
    for (auto objective : {ProbeObjective::combined, ProbeObjective::multiplicative}) {
      small.objective = objective;
      equal = equal && best_embedding_error(ring.algebra, small).error.get(objective) ==
                           brute_force_optimum(ring.algebra, 1, Rational(1, 2), objective);
      ++compared;
    }
  }
  ok = ok && equal;
  d << "; brute-force optimum matched in " << (equal ? std::to_string(compared) : std::string("NOT all")) << " cases";
  return {ok, d.str()};
}

// ---- 10 ----

Outcome parser() {
  FormulaGen gen(1000);
  gen.free = {"s"};
  int mismatches = 0;
  for (int i = 0; i < kRoundTrips; ++i) {
    Formula f = gen.formula(static_cast<std::size_t>(gen.pick(0, 3)));
    const std::string text = format_formula(f);
    Formula back = parse_formula(text);
    if (!(back == f) || format_formula(back) != text) ++mismatches;
  }
  int fixtures = 0;
  int positioned = 0;
  for (const auto& c : kGrammarErrors) {
    ++fixtures;
    try {
      parse_formula(c.text);
    } catch (const ParseError& e) {
      if (e.position() == c.position && std::string(e.what()).find("column") != std::string::npos) ++positioned;
    }
  }
  return {mismatches == 0 && positioned == fixtures,
          std::to_string(kRoundTrips) + " round trips, " + std::to_string(mismatches) + " mismatches; " +
              std::to_string(positioned) + "/" + std::to_string(fixtures) + " error fixtures positioned"};
}

}  // namespace

int main() {
  report(1, "K_n soundness", kn_soundness, kLimitKn);
  report(2, "H_{m,n} error bounds", hmn_bounds, kLimitHmn);
  report(3, "law counterexamples", counterexamples);
  report(4, "abelian groups", abelian_groups, kLimitGroups);
  report(5, "monotonicity and brute-force agreement", monotonicity);
  report(6, "reciprocal formula threshold", reciprocal_threshold, kLimitSweep);
  report(7, "inverse-square gap equivalence", inverse_square_gap);
  report(8, "linear system", linsys, kLimitLinsys);
  report(9, "ring probe", ring_probe);
  report(10, "parser", parser);
  return failures == 0 ? 0 : 1;
}
