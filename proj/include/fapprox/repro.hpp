#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fapprox/rational.hpp"
#include "fapprox/real_systems.hpp"

namespace fapprox {

// ---- the 2x2 system x + a y = b, a x + b y = 2 ----

/// Certified enclosures of the cube roots of 2 and 4.
struct CubeRoots {
  ExactScalar root2;
  ExactScalar root4;
};
CubeRoots cube_roots(unsigned digits);

/// Keeps the first `digits` significant decimal digits of a positive real,
/// deciding the cut from an enclosure with guard digits. Throws
/// UndecidableError when the enclosure straddles a cut.
Rational truncate_significant(const ExactScalar& x, unsigned digits);

struct LinsysLevel {
  unsigned Q = 0;
  FPParams working;  // precision the elimination runs at
  DecimalFP a;
  DecimalFP b;
  bool singular = false;  // the rounded determinant is zero
  DecimalFP x;
  DecimalFP y;
  /// x + cbrt(2) y - cbrt(4), enclosed.
  ExactScalar residual;
  /// Certified upper bound on |residual|.
  Rational residual_bound;
};

struct LinsysReport {
  std::vector<LinsysLevel> levels;
  /// Max-norm distance between the solutions of levels i < j, in pair order;
  /// pairs with a singular level are skipped.
  struct Distance {
    std::size_t i;
    std::size_t j;
    Rational value;
  };
  std::vector<Distance> distances;

  std::string to_json() const;
  std::string to_table() const;
};

struct LinsysConfig {
  std::vector<unsigned> Q{5, 10};
  /// Exponent bound of the working format; 0 picks 2 Q + 2.
  long P = 0;
  /// Working mantissa digits; 0 picks 2 Q + 2 so products of inputs are exact.
  unsigned working_digits = 0;
};

/// Truncates the roots to Q digits, solves by Cramer's rule with fp_* at the
/// working precision, and measures the residual against the exact line.
LinsysReport repro_linsys(const LinsysConfig& config);

/// Exact Cramer solution of the system for rational a, b with a^2 != b.
std::optional<std::pair<Rational, Rational>> solve_exact(const Rational& a, const Rational& b);

// ---- polynomial approximation of a unary function ----

enum class UnaryBuiltin { sin, square, reciprocal_shifted };

/// g together with a certified oracle: sin, x^2, and 1/(x + 2).
struct UnaryFunction {
  UnaryBuiltin id = UnaryBuiltin::sin;

  static UnaryFunction parse(const std::string& name);
  std::string name() const;
  /// Enclosure of g(x) with radius at most tol.
  ExactScalar eval(const Rational& x, const Rational& tol) const;
  /// Default polynomial, interval half-width d and accuracy delta for which
  /// |g - poly| <= delta holds on [-d, d].
  std::vector<Rational> default_coefficients() const;
  Rational default_d() const;
  Rational default_delta() const;
};

struct PolyCell {
  Rational a;
  Rational epsilon;
};

struct PolyConfig {
  UnaryFunction g;
  std::vector<Rational> coefficients;  // b_0 .. b_n
  Rational d{1};
  Rational d_inner{Rational(9, 10)};
  Rational delta;
  Rational delta_inner;  // the target accuracy delta' > delta
  std::vector<PolyCell> ladder;  // coarse to fine
  std::size_t xi_samples = 200;
  std::size_t coefficient_samples = 6;
  std::uint64_t seed = 1;

  /// sin with its degree-5 Taylor polynomial on [-1, 1], delta = 1/7!,
  /// delta' = 2 delta, and a ladder of eps = 4^-k / 16.
  static PolyConfig defaults(UnaryFunction g);
};

struct PolyFailure {
  Rational xi;
  std::vector<Rational> coefficients;  // the perturbed grid values
  Rational g_value;                    // j(g_f(xi))
  Rational poly_value;                 // j(poly_f)
  Rational distance;
};

struct PolyCellResult {
  PolyCell cell;
  Rational coefficient_radius;  // the eps0 the coefficients were drawn within
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::optional<PolyFailure> first_failure;
  bool passed() const { return failures == 0; }
};

struct PolyReport {
  std::string function;
  std::vector<Rational> coefficients;
  Rational d, d_inner, delta, delta_inner;
  /// Results with the coefficient radius set to the threshold cell's eps.
  std::vector<PolyCellResult> cells;
  /// Coarsest ladder index from which every finer cell passes; with it the
  /// empirical (a0, eps0) is that cell's (a, eps).
  std::optional<std::size_t> threshold_cell;

  std::string to_json() const;
  std::string to_table() const;
};

/// Evaluates g_f(xi) and the polynomial term in the canonical (a, eps)
/// approximation (nearest grid point, ties toward zero, clamped to [-a, a])
/// on sampled xi in [-d', d'] and coefficient tuples within eps0 of b_i.
/// The descending sweep tries eps0 = eps_k for k from the coarsest cell.
/// Throws Error on a violated precondition or when the sampled premise
/// |g - poly| <= delta fails.
PolyReport repro_poly(const PolyConfig& config);

/// Polynomial term b_n xi^n + ... + b_0 evaluated with grid rounding after
/// each operation: powers by repeated multiplication, then summed from the
/// leading term down.
Rational grid_polynomial(const std::vector<Rational>& coefficients, const Rational& xi, const PolyCell& cell);
/// Nearest grid point (ties toward zero), clamped to [-K eps, K eps].
Rational grid_round(const Rational& x, const PolyCell& cell);

}  // namespace fapprox
