#include <algorithm>
#include <set>

#include "fapprox/pbf.hpp"

namespace fapprox {

namespace {

void collect(const Term& t, std::vector<std::string>& out, std::set<std::string>& seen) {
  if (t.kind == Term::Kind::variable) {
    if (seen.insert(t.name).second) out.push_back(t.name);
    return;
  }
  for (const auto& a : t.args) collect(a, out, seen);
}

void require_aligned(const Formula& f, const BoundTuple& c) {
  if (c.size() != f.prefix.size()) {
    throw Error("bound tuple has " + std::to_string(c.size()) + " entries for a prefix of length " +
                std::to_string(f.prefix.size()));
  }
}

}  // namespace

bool Formula::bounded() const {
  return std::all_of(prefix.begin(), prefix.end(), [](const QuantifiedVar& q) { return q.bound.has_value(); });
}

std::vector<std::string> Formula::free_variables() const {
  std::vector<std::string> all;
  std::set<std::string> seen;
  for (const auto& conj : matrix) {
    for (const auto& atom : conj) {
      collect(atom.lhs, all, seen);
      collect(atom.rhs, all, seen);
    }
  }
  std::vector<std::string> out;
  for (const auto& v : all) {
    bool bound = std::any_of(prefix.begin(), prefix.end(), [&](const QuantifiedVar& q) { return q.variable == v; });
    if (!bound) out.push_back(v);
  }
  return out;
}

BoundTuple bounds_of(const Formula& f) {
  BoundTuple c;
  for (const auto& q : f.prefix) {
    if (!q.bound) throw Error("quantifier over '" + q.variable + "' is unbounded");
    c.push_back(*q.bound);
  }
  return c;
}

Formula with_bounds(Formula f, const BoundTuple& c) {
  require_aligned(f, c);
  for (std::size_t i = 0; i < c.size(); ++i) f.prefix[i].bound = c[i];
  return f;
}

Formula desugar_order(OrderRelation relation, const Rational& b, const std::string& x, const std::string& y,
                      const std::string& z) {
  if (sgn(b) <= 0) throw Error("order encoding needs a positive bound");
  Formula f;
  f.prefix.push_back({Quantifier::exists, z, Region::closed(-b, b)});
  const Term zz = Term::var(z) * Term::var(z);
  if (relation == OrderRelation::less_equal) {
    f.matrix = {{Atom::eq(Term::var(x) + zz, Term::var(y))}};
  } else {
    const Term diff = Term::var(y) + Term::lit(-1) * Term::var(x);
    f.matrix = {{Atom::eq(diff * Term::var(z) * Term::var(z), Term::lit(1))}};
  }
  return f;
}

bool check_regular(const Formula& f, const BoundTuple& c) {
  require_aligned(f, c);
  for (std::size_t i = 0; i < c.size(); ++i) {
    // Intervals here are always bounded, so relative compactness is automatic.
    if (f.prefix[i].quantifier == Quantifier::forall ? !c[i].is_open() : !c[i].is_compact()) return false;
  }
  return true;
}

bool check_ll(const Formula& f, const BoundTuple& c, const BoundTuple& c_prime) {
  require_aligned(f, c);
  require_aligned(f, c_prime);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].is_real() != c_prime[i].is_real()) return false;
    bool ok = f.prefix[i].quantifier == Quantifier::forall ? c_prime[i].closure_within(c[i])
                                                             : c[i].within_interior_of(c_prime[i]);
    if (!ok) return false;
  }
  return true;
}

BoundTuple widen(const Formula& f, const BoundTuple& c, const Rational& margin) {
  require_aligned(f, c);
  if (sgn(margin) <= 0) throw Error("widen needs a positive margin");
  BoundTuple out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].is_padic()) {
      out.push_back(c[i]);
      continue;
    }
    std::vector<Interval> parts;
    if (f.prefix[i].quantifier == Quantifier::forall) {
      for (const auto& part : c[i].intervals()) {
        Rational lo = part.lo + margin;
        Rational hi = part.hi - margin;
        if (!(lo < hi)) {
          throw Error("margin " + to_decimal_string(margin) + " collapses the bound of '" + f.prefix[i].variable + "'");
        }
        parts.emplace_back(lo, hi, part.openness);
      }
    } else {
      for (const auto& part : c[i].intervals()) {
        Interval grown(part.lo - margin, part.hi + margin, part.openness);
        // Components that now touch are merged.
        if (!parts.empty() && grown.lo <= parts.back().hi) {
          parts.back().hi = std::max(parts.back().hi, grown.hi);
        } else {
          parts.push_back(grown);
        }
      }
    }
    out.push_back(Region::union_of(parts));
  }
  return out;
}

Formula approximate(const Formula& f, const Rational& epsilon) {
  if (sgn(epsilon) <= 0) throw Error("approximation needs a positive threshold");
  Formula out = f;
  for (auto& conj : out.matrix) {
    for (auto& atom : conj) {
      if (atom.kind == Atom::Kind::equality) atom = Atom::close(atom.lhs, atom.rhs, epsilon);
    }
  }
  return out;
}

namespace analytic {

namespace {

/// Some z in the region with z^2 = d, for rational d >= 0.
bool square_root_in(const Region& b, const Rational& d) {
  for (const auto& part : b.intervals()) {
    const bool open = part.is_open();
    // +sqrt(d) in part: lo < s (or <=) and s < hi (or <=), with s >= 0.
    auto above = [&](const Rational& lo) {  // s > lo (open) / s >= lo (closed)
      if (sgn(lo) < 0) return true;
      return open ? lo * lo < d : lo * lo <= d;
    };
    auto below = [&](const Rational& hi) {  // s < hi (open) / s <= hi (closed)
      if (sgn(hi) < 0) return false;
      if (sgn(hi) == 0) return !open && sgn(d) == 0;
      return open ? d < hi * hi : d <= hi * hi;
    };
    if (above(part.lo) && below(part.hi)) return true;
    // -sqrt(d) in part  <=>  +sqrt(d) in the mirrored part.
    if (above(-part.hi) && below(-part.lo)) return true;
  }
  return false;
}

}  // namespace

bool reciprocal_holds(const Region& c, const Region& b) {
  // 1/C is a union of intervals; it must lie inside B. Check componentwise.
  for (const auto& part : c.intervals()) {
    if (part.contains(Rational(0))) return false;
    if (sgn(part.lo) == 0 || sgn(part.hi) == 0) {
      return false;  // reciprocals unbounded near 0
    }
    Rational lo = 1 / part.hi;
    Rational hi = 1 / part.lo;
    Interval image(lo, hi, part.openness);
    Region img(image);
    if (!img.subset_of(b)) return false;
  }
  return true;
}

bool square_gap_holds(const Region& b, const Rational& x, const Rational& y) {
  const Rational d = y - x;
  if (sgn(d) < 0) return false;
  return square_root_in(b, d);
}

bool inverse_square_gap_holds(const Region& b, const Rational& x, const Rational& y) {
  const Rational d = y - x;
  if (sgn(d) <= 0) return false;
  return square_root_in(b, Rational(1 / d));
}

bool approx_inverse_square_gap_holds(const Rational& c, const Rational& alpha, const Rational& x, const Rational& y) {
  if (!(sgn(alpha) > 0 && alpha < 1)) throw Error("threshold must lie in (0, 1)");
  // (y - x) z^2 ranges over [0, (y - x) c^2] for y > x; it meets (1 - alpha, 1 + alpha)
  // iff (y - x) c^2 > 1 - alpha.
  return (y - x) * c * c > 1 - alpha;
}

}  // namespace analytic

}  // namespace fapprox
