#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "fapprox/ring_probe.hpp"

namespace fapprox::testing {

inline long bal(long x, long n) {
  long r = ((x % n) + n) % n;
  return r > n / 2 ? r - n : r;
}

/// Independent error evaluation in rationals: max over pairs of |j(x o y) - j(x) o j(y)| / eps.
inline EmbeddingError direct_error(const FiniteAlgebra& alg, const std::vector<long>& k, const Rational& a, const Rational& eps) {
  EmbeddingError e{0, 0};
  for (ElementId x = 0; x < alg.size(); ++x) {
    for (ElementId y = 0; y < alg.size(); ++y) {
      Rational jx = Rational(k[x]) * eps;
      Rational jy = Rational(k[y]) * eps;
      Rational s = jx + jy;
      Rational p = jx * jy;
      if (abs(s) <= a) {
        Rational d = abs(Rational(k[alg.apply("+", x, y)]) * eps - s) / eps;
        if (d > e.additive) e.additive = d;
      }
      if (abs(p) <= a) {
        Rational d = abs(Rational(k[alg.apply("*", x, y)]) * eps - p) / eps;
        if (d > e.multiplicative) e.multiplicative = d;
      }
    }
  }
  return e;
}

/// Minimum over every grid assignment hitting all 2K + 1 points.
inline Rational brute_force_optimum(const FiniteAlgebra& alg, const Rational& a, const Rational& eps, ProbeObjective objective) {
  const long K = floor_of(a / eps).get_si();
  const std::size_t n = alg.size();
  std::vector<long> k(n, -K);
  std::optional<Rational> best;
  for (;;) {
    std::vector<bool> hit(static_cast<std::size_t>(2 * K + 1), false);
    for (long v : k) hit[static_cast<std::size_t>(v + K)] = true;
    if (std::find(hit.begin(), hit.end(), false) == hit.end()) {
      Rational e = direct_error(alg, k, a, eps).get(objective);
      if (!best || e < *best) best = e;
    }
    std::size_t i = 0;
    while (i < n && k[i] == K) k[i++] = -K;
    if (i == n) break;
    ++k[i];
  }
  return *best;
}

}  // namespace fapprox::testing
