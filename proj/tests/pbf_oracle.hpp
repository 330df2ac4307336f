#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "fapprox/pbf.hpp"
#include "test_support.hpp"

namespace fapprox::testing {

inline ElementId nearest_id(const FiniteAlgebra& alg, const Rational& x) {
  ElementId best = 0;
  for (ElementId id = 1; id < alg.size(); ++id) {
    if (abs(alg.embed(id) - x) < abs(alg.embed(best) - x)) best = id;
  }
  return best;
}

// ---- brute-force oracle: substitutes every carrier element, no short-circuit ----

using Env = std::map<std::string, ElementId>;

inline ElementId bf_term(const Term& t, const FiniteAlgebra& alg, const Env& env) {
  switch (t.kind) {
    case Term::Kind::variable:
      return env.at(t.name);
    case Term::Kind::literal:
      return nearest_id(alg, t.value);
    case Term::Kind::application: {
      std::vector<ElementId> args;
      for (const auto& a : t.args) args.push_back(bf_term(a, alg, env));
      return alg.apply(alg.signature().index_of(t.name), args);
    }
  }
  return 0;
}

inline bool bf_matrix(const Formula& f, const FiniteAlgebra& alg, const Env& env) {
  std::vector<bool> disjuncts;
  for (const auto& conj : f.matrix) {
    std::vector<bool> atoms;
    for (const auto& atom : conj) {
      ElementId l = bf_term(atom.lhs, alg, env);
      ElementId r = bf_term(atom.rhs, alg, env);
      atoms.push_back(atom.kind == Atom::Kind::equality ? l == r
                                                        : abs(alg.embed(l) - alg.embed(r)) < atom.epsilon);
    }
    disjuncts.push_back(std::find(atoms.begin(), atoms.end(), false) == atoms.end());
  }
  return std::find(disjuncts.begin(), disjuncts.end(), true) != disjuncts.end();
}

inline bool bf_eval(const Formula& f, const FiniteAlgebra& alg, Env env, std::size_t level = 0) {
  if (level == f.prefix.size()) return bf_matrix(f, alg, env);
  const auto& qv = f.prefix[level];
  std::vector<bool> branches;
  for (ElementId id = 0; id < alg.size(); ++id) {
    if (!qv.bound->contains(alg.embed(id))) continue;
    env[qv.variable] = id;
    branches.push_back(bf_eval(f, alg, env, level + 1));
  }
  if (qv.quantifier == Quantifier::forall) return std::find(branches.begin(), branches.end(), false) == branches.end();
  return std::find(branches.begin(), branches.end(), true) != branches.end();
}

// ---- random formulas ----

struct FormulaGen {
  std::mt19937_64 rng;
  std::vector<std::string> vars;
  /// Free variables terms may use besides the prefix ones.
  std::vector<std::string> free;

  explicit FormulaGen(std::uint64_t seed) : rng(seed) {}

  long pick(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

  Region region() {
    long lo = pick(-8, 6);
    long hi = pick(lo + 1, 8);
    Rational l = frac(lo, 4);
    Rational h = frac(hi, 4);
    if (pick(0, 3) == 0) {
      long lo2 = pick(hi + 1, 12);
      return Region::union_of({Interval(l, h, Openness::closed), Interval(frac(lo2, 4), frac(lo2 + 2, 4), Openness::closed)});
    }
    return pick(0, 1) == 0 ? Region::open(l, h) : Region::closed(l, h);
  }

  Term term(int depth) {
    if (depth == 0 || pick(0, 2) == 0) {
      if (vars.empty() || pick(0, 3) == 0) return Term::lit(frac(pick(-6, 6), pick(1, 3)));
      return Term::var(vars[static_cast<std::size_t>(pick(0, static_cast<long>(vars.size()) - 1))]);
    }
    return pick(0, 1) == 0 ? term(depth - 1) + term(depth - 1) : term(depth - 1) * term(depth - 1);
  }

  Atom atom() {
    if (pick(0, 1) == 0) return Atom::eq(term(2), term(2));
    return Atom::close(term(2), term(2), frac(pick(1, 8), 4));
  }

  Formula formula(std::size_t quantifiers) {
    Formula f;
    vars = free;
    for (std::size_t i = 0; i < quantifiers; ++i) {
      std::string v = std::string(1, static_cast<char>('u' + i));
      vars.push_back(v);
      f.prefix.push_back({pick(0, 1) == 0 ? Quantifier::forall : Quantifier::exists, v, region()});
    }
    long disjuncts = pick(1, 2);
    for (long d = 0; d < disjuncts; ++d) {
      Conjunction conj;
      long atoms = pick(1, 2);
      for (long a = 0; a < atoms; ++a) conj.push_back(atom());
      f.matrix.push_back(conj);
    }
    return f;
  }
};


/// Formulas the parser must reject, with the zero-based error offset.
struct ErrorFixture {
  const char* text;
  std::size_t position;
};

inline const ErrorFixture kGrammarErrors[] = {
    {"forall x in (0, 1) x = 1", 19},                         // missing ':'
    {"forall x in (0, 1 : x = 1", 18},                        // unclosed region
    {"forall x in (0, 1) : exists y in [0, 1] : x = y", 21},  // not prenex
    {"forall x in (0, 1) : x = ", 25},                        // dangling '='
    {"forall x in (0, 1) : close(x, 1, 0) ", 33},             // non-positive threshold
    {"forall x in (0, 1) forall x in (0, 1) : x = x", 26},    // variable bound twice
    {": x = 1 $", 8},
};

}  // namespace fapprox::testing
