#include "fapprox/region.hpp"

#include <algorithm>

namespace fapprox {

Interval::Interval(Rational lo_, Rational hi_, Openness openness_)
    : lo(std::move(lo_)), hi(std::move(hi_)), openness(openness_) {
  if (!(lo < hi)) throw Error("interval needs lo < hi, got [" + fapprox::to_string(lo) + ", " + fapprox::to_string(hi) + "]");
}

bool Interval::contains(const Rational& x) const {
  if (is_open()) return lo < x && x < hi;
  return lo <= x && x <= hi;
}

bool Interval::contains(const ExactScalar& x) const {
  if (x.exact()) return contains(x.value);
  bool inside = is_open() ? (lo < x.lo() && x.hi() < hi) : (lo <= x.lo() && x.hi() <= hi);
  if (inside) return true;
  bool outside = is_open() ? (x.hi() <= lo || x.lo() >= hi) : (x.hi() < lo || x.lo() > hi);
  if (outside) return false;
  throw UndecidableError("enclosure straddles an interval endpoint");
}

bool PadicBall::contains(const Rational& x) const {
  if (sgn(x) == 0) return true;
  return padic_valuation(x, p) >= -m;
}

Rational PadicBall::radius() const { return pow_int(Rational(p), m); }

Region::Region(Interval interval) : shape_(std::vector<Interval>{std::move(interval)}) {}

Region::Region(PadicBall ball) : shape_(ball) {
  if (ball.p < 2) throw Error("p-adic ball needs a prime p >= 2");
}

Region Region::union_of(std::vector<Interval> parts) {
  if (parts.empty()) throw Error("empty region union");
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (!(parts[i - 1].hi < parts[i].lo)) throw Error("region union components must be separated");
  }
  Region r;
  r.shape_ = std::move(parts);
  return r;
}

const std::vector<Interval>& Region::intervals() const {
  if (!is_real()) throw Error("p-adic ball has no interval components");
  return std::get<std::vector<Interval>>(shape_);
}

const PadicBall& Region::ball() const {
  if (!is_padic()) throw Error("real region is not a p-adic ball");
  return std::get<PadicBall>(shape_);
}

bool Region::contains(const Rational& x) const {
  if (is_padic()) return ball().contains(x);
  return std::any_of(intervals().begin(), intervals().end(), [&](const Interval& i) { return i.contains(x); });
}

bool Region::contains(const ExactScalar& x) const {
  if (is_padic()) {
    if (!x.exact()) throw Error("p-adic membership needs an exact value");
    return ball().contains(x.value);
  }
  for (const auto& part : intervals()) {
    if (part.contains(x)) return true;
  }
  return false;
}

bool Region::is_open() const {
  if (is_padic()) return true;
  return std::all_of(intervals().begin(), intervals().end(), [](const Interval& i) { return i.is_open(); });
}

bool Region::is_compact() const {
  if (is_padic()) return true;
  return std::none_of(intervals().begin(), intervals().end(), [](const Interval& i) { return i.is_open(); });
}

bool Region::subset_of(const Region& outer) const {
  if (is_padic() != outer.is_padic()) throw Error("comparing regions of different ambient kinds");
  if (is_padic()) return ball().p == outer.ball().p && ball().m <= outer.ball().m;
  return std::all_of(intervals().begin(), intervals().end(), [&](const Interval& c) {
    return std::any_of(outer.intervals().begin(), outer.intervals().end(), [&](const Interval& o) {
      bool lo_ok = o.lo < c.lo || (o.lo == c.lo && (!o.is_open() || c.is_open()));
      bool hi_ok = c.hi < o.hi || (o.hi == c.hi && (!o.is_open() || c.is_open()));
      return lo_ok && hi_ok;
    });
  });
}

bool Region::closure_within(const Region& outer) const {
  if (is_padic() != outer.is_padic()) throw Error("comparing regions of different ambient kinds");
  if (is_padic()) return ball().p == outer.ball().p && ball().m <= outer.ball().m;
  // closure of a component is [lo, hi]; it must sit inside one component of outer.
  return std::all_of(intervals().begin(), intervals().end(), [&](const Interval& c) {
    return std::any_of(outer.intervals().begin(), outer.intervals().end(), [&](const Interval& o) {
      return o.is_open() ? (o.lo < c.lo && c.hi < o.hi) : (o.lo <= c.lo && c.hi <= o.hi);
    });
  });
}

bool Region::within_interior_of(const Region& outer) const {
  if (is_padic() != outer.is_padic()) throw Error("comparing regions of different ambient kinds");
  if (is_padic()) return ball().p == outer.ball().p && ball().m <= outer.ball().m;
  // interior of an outer component is (lo, hi).
  return std::all_of(intervals().begin(), intervals().end(), [&](const Interval& c) {
    return std::any_of(outer.intervals().begin(), outer.intervals().end(), [&](const Interval& o) {
      if (c.is_open()) return o.lo <= c.lo && c.hi <= o.hi;
      return o.lo < c.lo && c.hi < o.hi;
    });
  });
}

std::string Region::to_string() const {
  if (is_padic()) return "pball(" + std::to_string(ball().p) + ", " + std::to_string(ball().m) + ")";
  std::string out;
  for (const auto& part : intervals()) {
    if (!out.empty()) out += " | ";
    out += part.is_open() ? "(" : "[";
    out += to_decimal_string(part.lo) + ", " + to_decimal_string(part.hi);
    out += part.is_open() ? ")" : "]";
  }
  return out;
}

Entourage::Entourage(Rational eps) : epsilon(std::move(eps)) {
  if (sgn(epsilon) <= 0) throw Error("entourage epsilon must be positive");
}

long padic_precision(const Entourage& w, unsigned long p) {
  const Rational& e = w.epsilon;
  long v = padic_valuation(e, p);
  // epsilon = p^{-n} means the ordinary value has num 1 and den p^n (or num p^k, den 1).
  if (pow_int(Rational(p), v) != e) {
    throw Error("p-adic entourage must be a power of " + std::to_string(p) + ", got " + fapprox::to_string(e));
  }
  // ordinary value p^v corresponds to n = -v.
  return -v;
}

}  // namespace fapprox
