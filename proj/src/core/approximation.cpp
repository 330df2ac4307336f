#include "fapprox/approximation.hpp"

#include <algorithm>
#include <limits>

#include "fapprox/padic_systems.hpp"
#include "int128.hpp"

namespace fapprox {

using detail::i128;

AmbientStructure default_structure(const Ambient& ambient) {
  switch (ambient.kind) {
    case AmbientKind::real:
      return AmbientStructure::real_field();
    case AmbientKind::padic:
      return AmbientStructure::padic_field(ambient.p);
    case AmbientKind::none:
      break;
  }
  throw Error("algebra has no ambient embedding");
}

namespace {

void require_compatible(const FiniteAlgebra& alg, const Region& c) {
  if (!alg.embedded()) throw Error("algebra has no embedding into an ambient field");
  if (!alg.ambient().matches(c)) {
    throw Error("region " + c.to_string() + " does not live in the algebra's ambient " + alg.ambient().to_string());
  }
}

struct OpenComponent {
  Rational lo;
  Rational hi;
};

std::optional<Rational> uncovered_point(const std::vector<OpenComponent>& cover, const Interval& part) {
  if (part.is_open()) {
    auto it = std::find_if(cover.begin(), cover.end(),
                           [&](const OpenComponent& c) { return c.lo <= part.lo && part.lo < c.hi; });
    if (it != cover.end()) {
      if (it->hi >= part.hi) return std::nullopt;
      return it->hi;
    }
    Rational right = part.hi;
    for (const auto& c : cover) {
      if (c.lo > part.lo && c.lo < right) right = c.lo;
    }
    return Rational((part.lo + right) / 2);
  }
  auto it = std::find_if(cover.begin(), cover.end(),
                         [&](const OpenComponent& c) { return c.lo < part.lo && part.lo < c.hi; });
  if (it == cover.end()) return part.lo;
  if (it->hi > part.hi) return std::nullopt;
  return it->hi;
}

GridCheck real_grid(const FiniteAlgebra& alg, const Region& c, const Entourage& w) {
  std::vector<Rational> images;
  images.reserve(alg.size());
  for (ElementId id = 0; id < alg.size(); ++id) images.push_back(alg.embed(id));
  std::sort(images.begin(), images.end());
  images.erase(std::unique(images.begin(), images.end()), images.end());

  std::vector<OpenComponent> cover;
  for (const auto& x : images) {
    Rational lo = x - w.epsilon;
    Rational hi = x + w.epsilon;
    if (!cover.empty() && lo < cover.back().hi) {
      cover.back().hi = hi;
    } else {
      cover.push_back({lo, hi});
    }
  }
  for (const auto& part : c.intervals()) {
    if (auto witness = uncovered_point(cover, part)) return {false, witness};
  }
  return {true, std::nullopt};
}

/// Residue class of x in p^{-m}Z_p / p^n Z_p, as an integer in [0, p^{m+n}).
Integer padic_class(const Rational& x, unsigned long p, long m, const Integer& modulus) {
  Rational scaled = x * pow_int(Rational(p), m);
  Integer num = scaled.get_num();
  Integer den = scaled.get_den();
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t()) == 0) {
    throw Error("value outside the p-adic ball in class computation");
  }
  Integer r = (num * inv) % modulus;
  if (r < 0) r += modulus;
  return r;
}

GridCheck padic_grid(const FiniteAlgebra& alg, const Region& c, const Entourage& w) {
  const PadicBall& ball = c.ball();
  const unsigned long p = ball.p;
  const long m = ball.m;
  const long n = padic_precision(w, p);
  if (m + n <= 0) {
    // C sits inside a single ball of radius epsilon around 0.
    for (ElementId id = 0; id < alg.size(); ++id) {
      Rational x = alg.embed(id);
      if (sgn(x) == 0 || padic_valuation(x, p) >= n) return {true, std::nullopt};
    }
    return {false, Rational(0)};
  }
  Integer modulus;
  mpz_ui_pow_ui(modulus.get_mpz_t(), p, static_cast<unsigned long>(m + n));
  if (modulus > 50'000'000) throw Error("too many residue classes for an exact p-adic grid check");
  std::vector<bool> covered(modulus.get_ui(), false);
  for (ElementId id = 0; id < alg.size(); ++id) {
    Rational x = alg.embed(id);
    if (!ball.contains(x)) continue;
    covered[padic_class(x, p, m, modulus).get_ui()] = true;
  }
  for (std::size_t r = 0; r < covered.size(); ++r) {
    if (!covered[r]) {
      Rational witness(Integer(static_cast<unsigned long>(r)), Integer(1));
      return {false, Rational(witness / pow_int(Rational(p), m))};
    }
  }
  return {true, std::nullopt};
}

/// Visits every tuple of `pool` of the given arity in lexicographic order.
template <typename Visit>
void for_each_tuple(const std::vector<ElementId>& pool, unsigned arity, Visit&& visit) {
  std::vector<std::size_t> idx(arity, 0);
  std::vector<ElementId> tuple(arity);
  if (arity > 0 && pool.empty()) return;
  while (true) {
    for (unsigned k = 0; k < arity; ++k) tuple[k] = pool[idx[k]];
    visit(std::span<const ElementId>(tuple));
    unsigned k = arity;
    while (k > 0) {
      --k;
      if (++idx[k] < pool.size()) break;
      idx[k] = 0;
      if (k == 0) return;
    }
    if (arity == 0) return;
  }
}

struct ScaledBounds {
  std::vector<std::pair<i128, i128>> ranges;

  bool contains(i128 v) const {
    return std::any_of(ranges.begin(), ranges.end(), [v](const auto& r) { return r.first <= v && v <= r.second; });
  }
};

std::optional<ScaledBounds> scaled_bounds(const Region& c, const Integer& scale) {
  ScaledBounds out;
  for (const auto& part : c.intervals()) {
    Rational lo = part.lo * scale;
    Rational hi = part.hi * scale;
    Integer l = part.is_open() ? Integer(floor_of(lo) + 1) : ceil_of(lo);
    Integer h = part.is_open() ? Integer(ceil_of(hi) - 1) : floor_of(hi);
    auto l128 = detail::to_i128(l);
    auto h128 = detail::to_i128(h);
    if (!l128 || !h128) return std::nullopt;
    out.ranges.emplace_back(*l128, *h128);
  }
  return out;
}

/// Integer path for the real field's + and * over a scaled embedding. Returns
/// false if the magnitudes do not fit, in which case the caller falls back.
bool fast_real_symbol(const FiniteAlgebra& alg, std::size_t symbol, const std::vector<ElementId>& in_c,
                      const Region& c, const Entourage& w, const CheckOptions& options, HomCheck& out) {
  const ScaledEmbedding& se = *alg.embedding().scaled();
  const std::string& name = alg.signature()[symbol].name;
  const bool is_mul = name == "*";
  const Integer d(static_cast<long>(se.denominator));
  const Integer scale = is_mul ? Integer(d * d) : d;
  auto bounds = scaled_bounds(c, scale);
  auto threshold = detail::to_i128(ceil_of(w.epsilon * scale) - 1);
  if (!bounds || !threshold) return false;

  const i128 den = se.denominator;
  std::vector<i128> num(alg.size(), 0);
  for (ElementId id : in_c) num[id] = se.numerator(id);
  for (ElementId a : in_c) {
    for (ElementId b : in_c) {
      const i128 exact = is_mul ? num[a] * num[b] : num[a] + num[b];
      if (!bounds->contains(exact)) continue;
      const ElementId r = alg.apply(symbol, a, b);
      if (r >= alg.size()) throw Error("operation table lookup out of range");
      const i128 embedded = se.numerator(r);
      const i128 diff = is_mul ? exact - embedded * den : exact - embedded;
      if (detail::abs128(diff) <= *threshold) continue;
      ++out.violation_count;
      if (out.violations.size() < options.max_reported) {
        Rational exact_q(detail::from_i128(exact), scale);
        exact_q.canonicalize();
        Rational emb = alg.embed(r);
        out.violations.push_back({name, {a, b}, ExactScalar(exact_q), r, emb, abs(exact_q - emb)});
      }
    }
  }
  return true;
}

}  // namespace

std::vector<ElementId> preimage(const FiniteAlgebra& alg, const Region& region) {
  if (!alg.ambient().matches(region)) {
    throw Error("region " + region.to_string() + " does not live in the algebra's ambient " + alg.ambient().to_string());
  }
  std::vector<ElementId> out;
  const auto& se = alg.embedding().scaled();
  std::optional<ScaledBounds> bounds;
  if (se && region.is_real()) bounds = scaled_bounds(region, Integer(static_cast<long>(se->denominator)));
  for (ElementId id = 0; id < alg.size(); ++id) {
    bool inside = bounds ? bounds->contains(se->numerator(id)) : region.contains(alg.embed(id));
    if (inside) out.push_back(id);
  }
  return out;
}

GridCheck check_grid(const FiniteAlgebra& alg, const Region& c, const Entourage& w) {
  require_compatible(alg, c);
  if (alg.ambient().kind == AmbientKind::real) return real_grid(alg, c, w);
  return padic_grid(alg, c, w);
}

HomCheck check_homomorphism(const FiniteAlgebra& alg, const AmbientStructure& structure, const Region& c,
                            const Entourage& w, const CheckOptions& options) {
  require_compatible(alg, c);
  if (!(structure.ambient() == alg.ambient())) throw Error("ambient structure does not match the algebra");
  HomCheck out;
  const std::vector<ElementId> in_c = preimage(alg, c);
  std::vector<ExactScalar> embedded(alg.size());
  std::vector<bool> have(alg.size(), false);
  auto value_of = [&](ElementId id) -> const ExactScalar& {
    if (!have[id]) {
      embedded[id] = ExactScalar(alg.embed(id));
      have[id] = true;
    }
    return embedded[id];
  };

  const bool fast_ok = options.use_fast_path && alg.ambient().kind == AmbientKind::real &&
                       alg.embedding().scaled().has_value();
  for (std::size_t s = 0; s < alg.signature().size(); ++s) {
    const Symbol& sym = alg.signature()[s];
    if (fast_ok && sym.arity == 2 && (sym.name == "+" || sym.name == "*") && structure.standard(sym.name)) {
      if (fast_real_symbol(alg, s, in_c, c, w, options, out)) continue;
    }
    std::vector<ExactScalar> args(sym.arity);
    for_each_tuple(in_c, sym.arity, [&](std::span<const ElementId> tuple) {
      for (unsigned k = 0; k < sym.arity; ++k) args[k] = value_of(tuple[k]);
      ExactScalar exact = structure.apply(sym.name, args);
      if (!c.contains(exact)) return;
      const ElementId r = alg.apply(s, tuple);
      if (r >= alg.size()) throw Error("operation table lookup out of range");
      const ExactScalar& emb = value_of(r);
      if (alg.ambient().close(exact, emb, w)) return;
      ++out.violation_count;
      if (out.violations.size() < options.max_reported) {
        out.violations.push_back({sym.name, std::vector<ElementId>(tuple.begin(), tuple.end()), exact, r, emb.value,
                                  alg.ambient().distance(exact.value, emb.value)});
      }
    });
  }
  out.ok = out.violation_count == 0;
  return out;
}

HomCheck check_homomorphism(const FiniteAlgebra& alg, const Region& c, const Entourage& w,
                            const CheckOptions& options) {
  return check_homomorphism(alg, default_structure(alg.ambient()), c, w, options);
}

ApproximationReport check_approximation(const FiniteAlgebra& alg, const AmbientStructure& structure,
                                        const Region& c, const Entourage& w, const CheckOptions& options) {
  ApproximationReport report;
  GridCheck grid = check_grid(alg, c, w);
  report.grid_ok = grid.ok;
  report.grid_witness = grid.witness;
  HomCheck hom = check_homomorphism(alg, structure, c, w, options);
  report.hom_ok = hom.ok;
  report.hom_violations = std::move(hom.violations);
  report.violation_count = hom.violation_count;
  return report;
}

ApproximationReport check_approximation(const FiniteAlgebra& alg, const Region& c, const Entourage& w,
                                        const CheckOptions& options) {
  return check_approximation(alg, default_structure(alg.ambient()), c, w, options);
}

namespace {

FiniteAlgebra canonical_real(const AmbientStructure& structure, const Region& c, const Entourage& w,
                             const Rational& step) {
  if (sgn(step) <= 0) throw Error("grid step must be positive");
  // A step-spaced grid with nearest-point rounding errs by at most step/2 and
  // leaves gaps of size step, so step <= epsilon keeps both conditions strict.
  if (step > w.epsilon) throw Error("grid step " + to_string(step) + " exceeds epsilon " + to_string(w.epsilon));
  Rational lo = c.intervals().front().lo;
  Rational hi = c.intervals().back().hi;
  const Integer kmin = floor_of(lo / step);
  const Integer kmax = ceil_of(hi / step);
  const Integer count = kmax - kmin + 1;
  if (count > 20'000'000) throw Error("canonical grid too large");
  const Integer u = step.get_num();
  const Integer v = step.get_den();
  if (!fits_int64(kmin) || !fits_int64(kmax) || !fits_int64(u) || !fits_int64(v) ||
      !fits_int64(Integer(abs(kmin) * u + abs(kmax) * u))) {
    throw Error("canonical grid parameters exceed 64-bit range");
  }
  const std::int64_t k0 = kmin.get_si();
  const std::int64_t k1 = kmax.get_si();
  const std::int64_t su = u.get_si();
  const std::int64_t sv = v.get_si();
  const auto n = static_cast<std::size_t>(count.get_ui());

  auto clamp_index = [k0, k1](i128 k) -> ElementId {
    if (k < k0) k = k0;
    if (k > k1) k = k1;
    return static_cast<ElementId>(k - k0);
  };

  Signature sig = structure.signature();
  std::vector<Operation> ops;
  for (const auto& sym : sig.symbols()) {
    if (sym.arity == 2 && sym.name == "+" && structure.standard("+")) {
      ops.push_back(Operation::lazy(2, [=](std::span<const ElementId> a) {
        return clamp_index(static_cast<i128>(a[0]) + k0 + static_cast<i128>(a[1]) + k0);
      }));
    } else if (sym.arity == 2 && sym.name == "*" && structure.standard("*")) {
      ops.push_back(Operation::lazy(2, [=](std::span<const ElementId> a) {
        const i128 x = static_cast<i128>(a[0]) + k0;
        const i128 y = static_cast<i128>(a[1]) + k0;
        // (x step)(y step) / step = x y u / v grid units.
        return clamp_index(detail::nearest_div(x * y * su, sv));
      }));
    } else {
      // Generic symbol: materialize from certified enclosures.
      std::size_t total = table_size(n, sym.arity);
      if (total > 5'000'000) throw Error("table for '" + sym.name + "' too large to materialize");
      std::vector<ElementId> entries(total);
      std::vector<ExactScalar> args(sym.arity);
      for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        for (unsigned k = sym.arity; k-- > 0;) {
          args[k] = ExactScalar(Rational(Integer(static_cast<long>(rem % n)) + k0) * step);
          rem /= n;
        }
        ExactScalar r = structure.apply(sym.name, args);
        Rational qa = r.lo() / step;
        Rational qb = r.hi() / step;
        // nearest with ties toward zero, decided on both enclosure ends
        auto nearest = [](const Rational& q) {
          Integer f = floor_of(q);
          Rational frac = q - f;
          if (frac > Rational(1, 2)) return Integer(f + 1);
          if (frac < Rational(1, 2)) return f;
          return f >= 0 ? f : Integer(f + 1);
        };
        Integer ka = nearest(qa);
        Integer kb = nearest(qb);
        if (ka != kb) throw UndecidableError("enclosure too wide to round '" + sym.name + "' to the grid");
        auto k = detail::to_i128(ka);
        entries[idx] = clamp_index(*k);
      }
      ops.push_back(Operation::table(sym.arity, std::move(entries)));
    }
  }
  Embedding emb = Embedding::scaled(sv, [k0, su](ElementId id) { return (static_cast<std::int64_t>(id) + k0) * su; });
  return FiniteAlgebra(std::move(sig), n, std::move(ops), Ambient::real(), std::move(emb));
}

}  // namespace

FiniteAlgebra canonical_approximation(const AmbientStructure& structure, const Region& c, const Entourage& w,
                                      const Rational& step) {
  if (!structure.ambient().matches(c)) throw Error("region does not match the ambient structure");
  if (structure.ambient().kind == AmbientKind::real) return canonical_real(structure, c, w, step);
  const PadicBall& ball = c.ball();
  const long n = padic_precision(w, ball.p);
  // A finer or wider H_{m,n} still approximates at (C, W).
  const long m = std::max<long>(ball.m, 0);
  const long n_eff = std::max<long>(std::max<long>(n, m + 1), 1);
  return build_Hmn(HmnParams{ball.p, static_cast<unsigned>(m), static_cast<unsigned>(n_eff)});
}

bool check_restriction_monotone(const FiniteAlgebra& alg, const Region& c, const Entourage& w,
                                const Region& c_small, const Entourage& w_large) {
  if (!c_small.subset_of(c)) throw PremiseError("C' is not contained in C");
  if (w_large.epsilon < w.epsilon) throw PremiseError("W' is finer than W");
  return check_approximation(alg, c_small, w_large).ok();
}

}  // namespace fapprox
