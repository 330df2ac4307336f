#include "fapprox/laws.hpp"

#include <algorithm>
#include <map>

#include "fapprox/approximation.hpp"

namespace fapprox {

unsigned Law::width() const {
  switch (kind) {
    case LawKind::assoc:
    case LawKind::distrib:
    case LawKind::cancel:
      return 3;
    case LawKind::comm:
      return 2;
    case LawKind::identity:
    case LawKind::inverse:
      return 1;
  }
  return 0;
}

std::string Law::describe() const {
  switch (kind) {
    case LawKind::assoc:
      return "(a " + op + " b) " + op + " c = a " + op + " (b " + op + " c)";
    case LawKind::comm:
      return "a " + op + " b = b " + op + " a";
    case LawKind::distrib:
      return "(a " + other + " b) " + op + " c = (a " + op + " c) " + other + " (b " + op + " c), and on the left";
    case LawKind::cancel:
      return "a " + op + " b = a " + op + " c implies b = c";
    case LawKind::identity:
      return "a " + op + " e = e " + op + " a = a";
    case LawKind::inverse:
      return "some b has a " + op + " b = b " + op + " a = e";
  }
  return {};
}

namespace {

struct Ops {
  const FiniteAlgebra& alg;
  std::size_t op;
  std::size_t other = 0;

  ElementId f(ElementId a, ElementId b) const { return alg.apply(op, a, b); }
  ElementId g(ElementId a, ElementId b) const { return alg.apply(other, a, b); }
};

Ops resolve(const FiniteAlgebra& alg, const Law& law) {
  auto binary = [&](const std::string& name) {
    std::size_t idx = alg.signature().index_of(name);
    if (alg.signature()[idx].arity != 2) throw Error("law needs '" + name + "' to be binary");
    return idx;
  };
  Ops ops{alg, binary(law.op)};
  if (law.kind == LawKind::distrib) ops.other = binary(law.other);
  if ((law.kind == LawKind::identity || law.kind == LawKind::inverse) && law.element >= alg.size()) {
    throw Error("law element outside the carrier");
  }
  return ops;
}

LawInstance evaluate(const Ops& o, const Law& law, const std::vector<ElementId>& t) {
  LawInstance r;
  r.tuple = t;
  switch (law.kind) {
    case LawKind::assoc:
      r.lhs = o.f(o.f(t[0], t[1]), t[2]);
      r.rhs = o.f(t[0], o.f(t[1], t[2]));
      r.holds = r.lhs == r.rhs;
      break;
    case LawKind::comm:
      r.lhs = o.f(t[0], t[1]);
      r.rhs = o.f(t[1], t[0]);
      r.holds = r.lhs == r.rhs;
      break;
    case LawKind::distrib: {
      r.lhs = o.f(o.g(t[0], t[1]), t[2]);
      r.rhs = o.g(o.f(t[0], t[2]), o.f(t[1], t[2]));
      r.holds = r.lhs == r.rhs;
      if (r.holds) {
        r.lhs = o.f(t[2], o.g(t[0], t[1]));
        r.rhs = o.g(o.f(t[2], t[0]), o.f(t[2], t[1]));
        r.holds = r.lhs == r.rhs;
        if (!r.holds) r.note = "left";
      } else {
        r.note = "right";
      }
      break;
    }
    case LawKind::cancel:
      r.lhs = o.f(t[0], t[1]);
      r.rhs = o.f(t[0], t[2]);
      r.holds = !(r.lhs == r.rhs && t[1] != t[2]);
      break;
    case LawKind::identity:
      r.lhs = o.f(t[0], law.element);
      r.rhs = o.f(law.element, t[0]);
      r.holds = r.lhs == t[0] && r.rhs == t[0];
      break;
    case LawKind::inverse: {
      r.holds = false;
      for (ElementId b = 0; b < o.alg.size(); ++b) {
        if (o.f(t[0], b) == law.element && o.f(b, t[0]) == law.element) {
          r.holds = true;
          r.lhs = b;
          r.rhs = b;
          break;
        }
      }
      break;
    }
  }
  return r;
}

std::vector<std::vector<ElementId>> pools(const FiniteAlgebra& alg, const Law& law, const LawSearchOptions& options) {
  std::vector<ElementId> base;
  if (options.restrict) {
    base = preimage(alg, *options.restrict);
  } else {
    base.resize(alg.size());
    for (ElementId id = 0; id < alg.size(); ++id) base[id] = id;
  }
  if (options.pins.size() > law.width()) throw Error("more pins than law variables");
  std::vector<std::vector<ElementId>> out(law.width(), base);
  for (std::size_t k = 0; k < options.pins.size(); ++k) {
    if (!options.pins[k]) continue;
    std::vector<ElementId> allowed = *options.pins[k];
    std::sort(allowed.begin(), allowed.end());
    std::vector<ElementId> kept;
    std::set_intersection(base.begin(), base.end(), allowed.begin(), allowed.end(), std::back_inserter(kept));
    out[k] = std::move(kept);
  }
  return out;
}

std::optional<LawInstance> search_cancel(const Ops& o, const Law& law, const std::vector<std::vector<ElementId>>& p) {
  for (ElementId a : p[0]) {
    // Two smallest c per result value are enough to find c != b.
    std::map<ElementId, std::pair<ElementId, std::optional<ElementId>>> by_result;
    for (ElementId c : p[2]) {
      auto [it, inserted] = by_result.try_emplace(o.f(a, c), c, std::nullopt);
      if (!inserted && !it->second.second) it->second.second = c;
    }
    for (ElementId b : p[1]) {
      auto it = by_result.find(o.f(a, b));
      if (it == by_result.end()) continue;
      std::optional<ElementId> c;
      if (it->second.first != b) {
        c = it->second.first;
      } else {
        c = it->second.second;
      }
      if (c) return evaluate(o, law, {a, b, *c});
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<LawInstance> law_search(const FiniteAlgebra& alg, const Law& law, const LawSearchOptions& options) {
  const Ops o = resolve(alg, law);
  const auto p = pools(alg, law, options);
  for (const auto& pool : p) {
    if (pool.empty()) return std::nullopt;
  }
  if (law.kind == LawKind::cancel) return search_cancel(o, law, p);

  const unsigned width = law.width();
  std::vector<std::size_t> idx(width, 0);
  std::vector<ElementId> tuple(width);
  while (true) {
    for (unsigned k = 0; k < width; ++k) tuple[k] = p[k][idx[k]];
    LawInstance r = evaluate(o, law, tuple);
    if (!r.holds) return r;
    unsigned k = width;
    while (true) {
      if (k == 0) return std::nullopt;
      --k;
      if (++idx[k] < p[k].size()) break;
      idx[k] = 0;
    }
  }
}

LawInstance law_instance(const FiniteAlgebra& alg, const Law& law, const std::vector<ElementId>& tuple) {
  if (tuple.size() != law.width()) throw Error("law instance needs " + std::to_string(law.width()) + " elements");
  for (ElementId id : tuple) {
    if (id >= alg.size()) throw Error("law instance element outside the carrier");
  }
  return evaluate(resolve(alg, law), law, tuple);
}

}  // namespace fapprox
