#include <algorithm>

#include "core/int128.hpp"
#include "fapprox/pbf.hpp"

namespace fapprox {

using detail::i128;

ElementId nearest_element(const FiniteAlgebra& alg, const Rational& target) {
  if (!alg.embedded()) throw Error("numeric literals need an embedded algebra");
  ElementId best = 0;
  Rational best_distance = alg.ambient().distance(alg.embed(0), target);
  for (ElementId id = 1; id < alg.size(); ++id) {
    Rational d = alg.ambient().distance(alg.embed(id), target);
    if (d < best_distance) {
      best = id;
      best_distance = d;
    }
  }
  return best;
}

namespace {

struct CompiledTerm {
  enum class Kind { slot, constant, apply };
  Kind kind = Kind::constant;
  std::size_t index = 0;  // slot index or symbol index
  ElementId constant = 0;
  std::vector<CompiledTerm> args;
};

struct CompiledAtom {
  bool closeness = false;
  CompiledTerm lhs;
  CompiledTerm rhs;
  Entourage w{Rational(1)};
  // Real ambient with a scaled embedding: |n_a - n_b| * eps_den < eps_num * den.
  bool fast = false;
  i128 eps_num = 0;
  i128 eps_den = 1;
};

class Evaluator {
 public:
  Evaluator(const Formula& f, const FiniteAlgebra& alg, const Assignment& assignment, const EvalOptions& options)
      : f_(f), alg_(alg), options_(options) {
    for (const auto& q : f.prefix) {
      if (std::find(slots_.begin(), slots_.end(), q.variable) != slots_.end()) {
        throw Error("variable '" + q.variable + "' is quantified twice");
      }
      slots_.push_back(q.variable);
    }
    values_.assign(slots_.size(), 0);
    for (const auto& v : f.free_variables()) {
      auto it = assignment.find(v);
      if (it == assignment.end()) throw Error("free variable '" + v + "' has no assigned element");
      if (it->second >= alg.size()) throw Error("assignment for '" + v + "' is outside the carrier");
      slots_.push_back(v);
      values_.push_back(it->second);
    }
    for (const auto& q : f.prefix) {
      if (!q.bound) throw Error("quantifier over '" + q.variable + "' is unbounded");
      if (!alg.embedded()) throw Error("bounded quantifiers need an embedded algebra");
      if (!alg.ambient().matches(*q.bound)) {
        throw Error("bound " + q.bound->to_string() + " does not live in the algebra's ambient");
      }
      domains_.push_back(preimage(alg, *q.bound));
    }
    for (const auto& conj : f.matrix) {
      std::vector<CompiledAtom> out;
      for (const auto& atom : conj) out.push_back(compile(atom));
      matrix_.push_back(std::move(out));
    }
  }

  EvalResult run() {
    EvalResult result;
    std::vector<TraceStep> trace;
    result.value = level(0, &trace);
    result.trace = std::move(trace);
    result.matrix_evaluations = evaluations_;
    return result;
  }

 private:
  CompiledTerm compile(const Term& t) {
    CompiledTerm c;
    switch (t.kind) {
      case Term::Kind::variable: {
        auto it = std::find(slots_.begin(), slots_.end(), t.name);
        c.kind = CompiledTerm::Kind::slot;
        c.index = static_cast<std::size_t>(it - slots_.begin());
        break;
      }
      case Term::Kind::literal: {
        c.kind = CompiledTerm::Kind::constant;
        auto it = literal_cache_.find(t.value);
        if (it == literal_cache_.end()) it = literal_cache_.emplace(t.value, nearest_element(alg_, t.value)).first;
        c.constant = it->second;
        break;
      }
      case Term::Kind::application: {
        auto idx = alg_.signature().find(t.name);
        if (!idx) throw Error("symbol '" + t.name + "' is not in the algebra's signature");
        if (alg_.signature()[*idx].arity != t.args.size()) {
          throw Error("symbol '" + t.name + "' applied to the wrong number of arguments");
        }
        c.kind = CompiledTerm::Kind::apply;
        c.index = *idx;
        for (const auto& a : t.args) c.args.push_back(compile(a));
        break;
      }
    }
    return c;
  }

  CompiledAtom compile(const Atom& atom) {
    CompiledAtom c;
    c.lhs = compile(atom.lhs);
    c.rhs = compile(atom.rhs);
    if (atom.kind == Atom::Kind::closeness) {
      if (!alg_.embedded()) throw Error("closeness atoms need an embedded algebra");
      c.closeness = true;
      c.w = Entourage(atom.epsilon);
      const auto& scaled = alg_.embedding().scaled();
      if (alg_.ambient().kind == AmbientKind::real && scaled) {
        auto num = detail::to_i128(atom.epsilon.get_num() * scaled->denominator);
        auto den = detail::to_i128(atom.epsilon.get_den());
        if (num && den && *num < (i128(1) << 62) && *den < (i128(1) << 62)) {
          c.fast = true;
          c.eps_num = *num;
          c.eps_den = *den;
        }
      }
    }
    return c;
  }

  ElementId term_value(const CompiledTerm& t) {
    switch (t.kind) {
      case CompiledTerm::Kind::slot:
        return values_[t.index];
      case CompiledTerm::Kind::constant:
        return t.constant;
      case CompiledTerm::Kind::apply:
        break;
    }
    ElementId buf[4];
    std::vector<ElementId> big;
    std::span<ElementId> args;
    if (t.args.size() <= 4) {
      args = std::span<ElementId>(buf, t.args.size());
    } else {
      big.resize(t.args.size());
      args = big;
    }
    for (std::size_t i = 0; i < t.args.size(); ++i) args[i] = term_value(t.args[i]);
    return alg_.apply(t.index, std::span<const ElementId>(args.data(), args.size()));
  }

  bool atom_holds(const CompiledAtom& a) {
    ElementId l = term_value(a.lhs);
    ElementId r = term_value(a.rhs);
    if (!a.closeness) return l == r;
    if (l == r) return true;
    if (a.fast) {
      const auto& scaled = *alg_.embedding().scaled();
      i128 d = detail::abs128(static_cast<i128>(scaled.numerator(l)) - scaled.numerator(r));
      return d * a.eps_den < a.eps_num;
    }
    return alg_.ambient().close(alg_.embed(l), alg_.embed(r), a.w);
  }

  bool matrix_holds() {
    ++evaluations_;
    for (const auto& conj : matrix_) {
      bool all = true;
      for (const auto& atom : conj) {
        if (!atom_holds(atom)) {
          all = false;
          break;
        }
      }
      if (all) return true;
    }
    return false;
  }

  bool level(std::size_t i, std::vector<TraceStep>* trace) {
    if (i == f_.prefix.size()) return matrix_holds();
    const auto& q = f_.prefix[i];
    const bool want = trace != nullptr && i < options_.max_trace_depth;
    const bool exists = q.quantifier == Quantifier::exists;
    for (ElementId id : domains_[i]) {
      values_[i] = id;
      std::vector<TraceStep> sub;
      bool v = level(i + 1, want ? &sub : nullptr);
      if (v == exists) {
        // Witness for exists, counterexample for forall.
        if (want) {
          trace->push_back({q.quantifier, q.variable, id, alg_.label(id)});
          trace->insert(trace->end(), sub.begin(), sub.end());
        }
        return exists;
      }
    }
    return !exists;
  }

  const Formula& f_;
  const FiniteAlgebra& alg_;
  EvalOptions options_;
  std::vector<std::string> slots_;
  std::vector<ElementId> values_;
  std::vector<std::vector<ElementId>> domains_;
  std::vector<std::vector<CompiledAtom>> matrix_;
  std::map<Rational, ElementId> literal_cache_;
  std::uint64_t evaluations_ = 0;
};

}  // namespace

EvalResult eval_finite(const Formula& f, const FiniteAlgebra& alg, const Assignment& assignment,
                       const EvalOptions& options) {
  return Evaluator(f, alg, assignment, options).run();
}

}  // namespace fapprox
