#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fapprox/rational.hpp"

namespace fapprox {

enum class Openness { open, closed };

/// Real interval with both ends open or both closed. lo < hi.
struct Interval {
  Rational lo;
  Rational hi;
  Openness openness = Openness::closed;

  Interval(Rational lo, Rational hi, Openness openness);

  bool is_open() const { return openness == Openness::open; }
  bool contains(const Rational& x) const;
  bool contains(const ExactScalar& x) const;  // decided on the enclosure, throws if undecidable

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// The compact open ball p^{-m} Z_p = { x : |x|_p <= p^m }.
struct PadicBall {
  unsigned long p = 2;
  long m = 0;

  bool contains(const Rational& x) const;
  Rational radius() const;  // p^m

  friend bool operator==(const PadicBall&, const PadicBall&) = default;
};

/// A quantifier bound or compact set C: a finite union of disjoint real
/// intervals, or a p-adic ball.
class Region {
 public:
  Region(Interval interval);  // NOLINT(google-explicit-constructor)
  Region(PadicBall ball);     // NOLINT(google-explicit-constructor)

  /// Union of intervals. Components must be pairwise separated (their
  /// closures disjoint), which keeps closure/interior computable componentwise.
  static Region union_of(std::vector<Interval> parts);

  static Region closed(Rational lo, Rational hi) { return Interval(std::move(lo), std::move(hi), Openness::closed); }
  static Region open(Rational lo, Rational hi) { return Interval(std::move(lo), std::move(hi), Openness::open); }

  bool is_real() const { return std::holds_alternative<std::vector<Interval>>(shape_); }
  bool is_padic() const { return !is_real(); }
  const std::vector<Interval>& intervals() const;
  const PadicBall& ball() const;

  bool contains(const Rational& x) const;
  bool contains(const ExactScalar& x) const;

  /// Every component open (p-adic balls count as open).
  bool is_open() const;
  /// Every component closed and bounded (p-adic balls are compact).
  bool is_compact() const;

  /// Plain set containment.
  bool subset_of(const Region& outer) const;
  /// Closure of this region contained in `outer`.
  bool closure_within(const Region& outer) const;
  /// This region contained in the interior of `outer`.
  bool within_interior_of(const Region& outer) const;

  std::string to_string() const;

  friend bool operator==(const Region&, const Region&) = default;

 private:
  Region() = default;
  std::variant<std::vector<Interval>, PadicBall> shape_;
};

/// Metric closeness threshold: x and y are close when rho(x, y) < epsilon
/// (real) or |x - y|_p <= epsilon (p-adic, epsilon a power of p).
struct Entourage {
  Rational epsilon;

  explicit Entourage(Rational eps);

  friend bool operator==(const Entourage&, const Entourage&) = default;
};

/// Returns n with epsilon == p^{-n}; throws if epsilon is not a power of p.
long padic_precision(const Entourage& w, unsigned long p);

}  // namespace fapprox
