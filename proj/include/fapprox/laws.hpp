#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fapprox/finite_algebra.hpp"
#include "fapprox/region.hpp"

namespace fapprox {

enum class LawKind { assoc, comm, distrib, cancel, identity, inverse };

/// An algebraic law over named binary symbols. `op` is the operation under
/// test (the multiplication for distrib); `other` is the addition for
/// distrib. identity and inverse use `element` as the neutral element.
struct Law {
  LawKind kind = LawKind::assoc;
  std::string op;
  std::string other;
  ElementId element = 0;

  static Law assoc(std::string op) { return {LawKind::assoc, std::move(op), {}, 0}; }
  static Law comm(std::string op) { return {LawKind::comm, std::move(op), {}, 0}; }
  static Law distrib(std::string mul, std::string add) { return {LawKind::distrib, std::move(mul), std::move(add), 0}; }
  static Law cancel(std::string op) { return {LawKind::cancel, std::move(op), {}, 0}; }
  static Law identity(std::string op, ElementId e) { return {LawKind::identity, std::move(op), {}, e}; }
  static Law inverse(std::string op, ElementId e) { return {LawKind::inverse, std::move(op), {}, e}; }

  /// Number of variables in a counterexample tuple.
  unsigned width() const;
  std::string describe() const;
};

/// Per-position restriction of the scan: ids allowed in that slot, ascending.
using Pin = std::optional<std::vector<ElementId>>;

struct LawSearchOptions {
  /// Only elements embedded in this region take part.
  std::optional<Region> restrict;
  /// One entry per tuple position (missing entries are unrestricted).
  std::vector<Pin> pins;
};

struct LawInstance {
  std::vector<ElementId> tuple;
  bool holds = true;
  /// The two sides that should agree (for cancel: a+b and a+c; for inverse
  /// only `lhs` is meaningful).
  ElementId lhs = 0;
  ElementId rhs = 0;
  std::string note;
};

/// Exhaustive scan in lexicographic order of ids; returns the first violating
/// tuple or nothing when the law holds on the scanned set.
std::optional<LawInstance> law_search(const FiniteAlgebra& alg, const Law& law, const LawSearchOptions& options = {});

/// Evaluates the law at one tuple.
LawInstance law_instance(const FiniteAlgebra& alg, const Law& law, const std::vector<ElementId>& tuple);

}  // namespace fapprox
