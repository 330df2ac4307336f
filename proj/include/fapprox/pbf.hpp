#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fapprox/approximation.hpp"
#include "fapprox/finite_algebra.hpp"
#include "fapprox/region.hpp"
#include "fapprox/signature.hpp"

namespace fapprox {

/// t1 = t2, or the closeness atom <t1, t2> in W_eps.
struct Atom {
  enum class Kind { equality, closeness };

  Kind kind = Kind::equality;
  Term lhs;
  Term rhs;
  Rational epsilon;  // closeness only

  static Atom eq(Term a, Term b) { return {Kind::equality, std::move(a), std::move(b), Rational(0)}; }
  static Atom close(Term a, Term b, Rational eps) { return {Kind::closeness, std::move(a), std::move(b), std::move(eps)}; }

  friend bool operator==(const Atom&, const Atom&) = default;
};

enum class Quantifier { forall, exists };

struct QuantifiedVar {
  Quantifier quantifier = Quantifier::forall;
  std::string variable;
  std::optional<Region> bound;

  friend bool operator==(const QuantifiedVar&, const QuantifiedVar&) = default;
};

using Conjunction = std::vector<Atom>;

/// Prenex formula Q_1 y_1 ... Q_m y_m psi with psi in disjunctive normal form.
struct Formula {
  std::vector<QuantifiedVar> prefix;
  std::vector<Conjunction> matrix;

  bool bounded() const;
  /// Matrix variables not bound by the prefix, in order of first appearance.
  std::vector<std::string> free_variables() const;

  friend bool operator==(const Formula&, const Formula&) = default;
};

/// Quantifier bounds aligned with a formula's prefix.
using BoundTuple = std::vector<Region>;

BoundTuple bounds_of(const Formula& f);
Formula with_bounds(Formula f, const BoundTuple& c);

// ---- concrete syntax ----

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message);
  /// Zero-based offset into the input.
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

struct ParseOptions {
  /// Rewrite a matrix with nested and/or into DNF instead of rejecting it.
  bool normalize_dnf = true;
};

struct ParseResult {
  Formula formula;
  bool normalized = false;  // the matrix was not in DNF as written
};

ParseResult parse_formula_ex(std::string_view text, const ParseOptions& options = {});
Formula parse_formula(std::string_view text, const ParseOptions& options = {});
std::string format_formula(const Formula& f);
std::string format_term(const Term& t);
std::string format_region(const Region& r);
std::string format_number(const Rational& q);
Region parse_region(std::string_view text);

// ---- order relations as positive formulas ----

enum class OrderRelation { less_equal, less };

/// x <= y as exists z in [-b, b] (x + z*z = y); x < y as
/// exists z in [-b, b] ((y - x) z z = 1), with y - x written y + -1*x.
Formula desugar_order(OrderRelation relation, const Rational& b, const std::string& x = "x",
                      const std::string& y = "y", const std::string& z = "z");

// ---- bounds ----

/// Each forall bound open and relatively compact, each exists bound compact.
bool check_regular(const Formula& f, const BoundTuple& c);
/// c << c': forall bounds satisfy closure(C'_i) within C_i, exists bounds C_i
/// within int(C'_i).
bool check_ll(const Formula& f, const BoundTuple& c, const BoundTuple& c_prime);
/// Shrinks forall bounds and grows exists bounds by `margin`; p-adic balls are
/// kept. The result satisfies c << widen(c).
BoundTuple widen(const Formula& f, const BoundTuple& c, const Rational& margin);

/// phi[W]: every equality atom becomes a closeness atom with threshold eps.
Formula approximate(const Formula& f, const Rational& epsilon);

// ---- evaluation over finite algebras ----

struct TraceStep {
  Quantifier quantifier;
  std::string variable;
  ElementId element;
  std::string label;
};

struct EvalResult {
  bool value = false;
  /// Witnesses for true exists-steps and counterexamples for false
  /// forall-steps, outermost first; stops where no single element explains
  /// the outcome.
  std::vector<TraceStep> trace;
  std::uint64_t matrix_evaluations = 0;
};

struct EvalOptions {
  std::size_t max_trace_depth = 16;
};

using Assignment = std::map<std::string, ElementId>;

/// Every quantifier must be bounded; quantifiers range over j^{-1}(bound); terms use the operation tables;
/// closeness atoms compare embedded values with the ambient metric; equality
/// atoms compare carrier ids. Numeric literals denote the carrier element
/// nearest to them (lowest id on ties).
EvalResult eval_finite(const Formula& f, const FiniteAlgebra& alg, const Assignment& assignment,
                       const EvalOptions& options = {});

/// The carrier element whose embedded value is nearest to `target` (lowest id on ties).
ElementId nearest_element(const FiniteAlgebra& alg, const Rational& target);

// ---- exact ambient oracles for the order and reciprocal examples ----

namespace analytic {

/// forall x in C exists y in B (x y = 1) over R: the reciprocal image of C lies in B.
bool reciprocal_holds(const Region& c, const Region& b);
/// exists z in B (x + z z = y) over R.
bool square_gap_holds(const Region& b, const Rational& x, const Rational& y);
/// exists z in B ((y - x) z z = 1) over R.
bool inverse_square_gap_holds(const Region& b, const Rational& x, const Rational& y);
/// exists z in [-c, c] (|(y - x) z z - 1| < alpha) over R, for 0 < alpha < 1:
/// y > x + (1 - alpha) / c^2.
bool approx_inverse_square_gap_holds(const Rational& c, const Rational& alpha, const Rational& x,
                                     const Rational& y);

}  // namespace analytic

// ---- Ladder sweep ----

/// A ladder cell <C, W> with C = [-a, a] and W = eps.
struct Cell {
  Rational a;
  Rational epsilon;
};

/// Builds a finite (C, W)-approximation for a cell.
struct Builder {
  std::string name;
  std::function<FiniteAlgebra(const Cell&)> build;
};

Builder canonical_builder(const AmbientStructure& structure = AmbientStructure::real_field());
/// A_PQ with P, Q chosen so that 10^(P-Q) <= eps and the largest value exceeds a.
Builder apq_builder();
/// A'_{M,eps} with M = ceil(a / eps).
Builder modular_builder();
/// Step-eps grid with each point shifted by a seeded random offset of at most
/// eps/4; nearest-point tables.
Builder perturbed_builder(std::uint64_t seed);

struct SweepConfig {
  Formula formula;  // phi[c'][W'] is formed from formula, c_prime and w_prime
  BoundTuple c;
  BoundTuple c_prime;
  Rational w_prime;
  /// Ambient values for the free variables, in free_variables() order.
  std::vector<Rational> points;
  std::vector<Cell> ladder;  // coarse to fine
  std::vector<Builder> builders;
  /// Re-verify each constructed algebra is a (C, W)-approximation.
  bool verify_cells = false;
};

struct CellResult {
  std::string builder;
  Cell cell;
  std::size_t carrier_size = 0;
  std::uint64_t tuples = 0;
  std::uint64_t failures = 0;
  bool verdict = false;
  std::optional<bool> verified;
  std::vector<std::string> first_failure;  // labels of the failing tuple
};

struct SweepReport {
  std::string formula;
  std::vector<CellResult> cells;
  /// Index into the ladder of the coarsest cell from which every finer cell
  /// is true for every builder.
  std::optional<std::size_t> threshold_cell;
  std::vector<Cell> ladder;

  std::string to_json() const;
  std::string to_table() const;
};

SweepReport sweep(const SweepConfig& config);

}  // namespace fapprox
