#pragma once

#include <vector>

#include "fapprox/finite_algebra.hpp"

namespace fapprox::testing {

/// Canonical n/d; gmp's two-argument constructor does not reduce.
inline Rational frac(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// Ring-signature algebra from explicit tables and real embedding values.
inline FiniteAlgebra real_algebra(std::vector<Rational> values, std::vector<ElementId> add, std::vector<ElementId> mul) {
  const std::size_t n = values.size();
  std::vector<Operation> ops;
  ops.push_back(Operation::table(2, std::move(add)));
  ops.push_back(Operation::table(2, std::move(mul)));
  return FiniteAlgebra(Signature::ring(), n, std::move(ops), Ambient::real(), Embedding::values(std::move(values)));
}

/// Every table entry is the element nearest to the exact result (first on ties).
inline FiniteAlgebra nearest_algebra(const std::vector<Rational>& values) {
  const std::size_t n = values.size();
  auto nearest = [&](const Rational& x) {
    ElementId best = 0;
    for (ElementId i = 1; i < n; ++i) {
      if (abs(values[i] - x) < abs(values[best] - x)) best = i;
    }
    return best;
  };
  std::vector<ElementId> add(n * n);
  std::vector<ElementId> mul(n * n);
  for (ElementId a = 0; a < n; ++a) {
    for (ElementId b = 0; b < n; ++b) {
      add[a * n + b] = nearest(values[a] + values[b]);
      mul[a * n + b] = nearest(values[a] * values[b]);
    }
  }
  return real_algebra(values, std::move(add), std::move(mul));
}

}  // namespace fapprox::testing
