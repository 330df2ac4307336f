#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fapprox/ambient.hpp"
#include "fapprox/finite_algebra.hpp"
#include "fapprox/region.hpp"

namespace fapprox {

struct GridCheck {
  bool ok = false;
  std::optional<Rational> witness;  // a point of C not W-close to any image
};

struct HomViolation {
  std::string symbol;
  std::vector<ElementId> inputs;
  ExactScalar exact_result;  // g(j(a))
  ElementId table_result;    // g_f(a)
  Rational embedded_result;  // j(g_f(a))
  Rational distance;
};

struct HomCheck {
  bool ok = false;
  std::vector<HomViolation> violations;  // at most `limit` of them
  std::size_t violation_count = 0;
};

struct ApproximationReport {
  bool grid_ok = false;
  bool hom_ok = false;
  std::optional<Rational> grid_witness;
  std::vector<HomViolation> hom_violations;
  std::size_t violation_count = 0;

  bool ok() const { return grid_ok && hom_ok; }
};

struct CheckOptions {
  /// Violations kept in the report; the count is always exact.
  std::size_t max_reported = 1000;
  /// Allow the 64/128-bit integer path for the real field's + and *.
  bool use_fast_path = true;
};

/// The default structure for the algebra's ambient (R or Q_p with + and *).
AmbientStructure default_structure(const Ambient& ambient);

/// Is j(A_f) a (C, W)-grid? Decided exactly: interval coverage by merged open
/// balls for R, residue classes of p^{-m}Z_p / p^n Z_p for Q_p.
GridCheck check_grid(const FiniteAlgebra& alg, const Region& c, const Entourage& w);

/// Is j a (C, W)-homomorphism? Enumerates every symbol and every tuple whose
/// images and exact result lie in C.
HomCheck check_homomorphism(const FiniteAlgebra& alg, const AmbientStructure& structure, const Region& c,
                            const Entourage& w, const CheckOptions& options = {});
HomCheck check_homomorphism(const FiniteAlgebra& alg, const Region& c, const Entourage& w,
                            const CheckOptions& options = {});

ApproximationReport check_approximation(const FiniteAlgebra& alg, const AmbientStructure& structure,
                                        const Region& c, const Entourage& w, const CheckOptions& options = {});
ApproximationReport check_approximation(const FiniteAlgebra& alg, const Region& c, const Entourage& w,
                                        const CheckOptions& options = {});

/// Step-spaced grid over C rounded outward to multiples of `step`; each table
/// entry is the grid point nearest the exact result (ties toward zero),
/// clamped to the grid ends. For Q_p the H_{m,n} family is used and `step`
/// is ignored.
FiniteAlgebra canonical_approximation(const AmbientStructure& structure, const Region& c, const Entourage& w,
                                      const Rational& step);

/// Thrown when the premise C' within C, W within W' does not hold.
class PremiseError : public Error {
 public:
  using Error::Error;
};

/// Re-checks an approximation on a smaller set and a coarser entourage.
bool check_restriction_monotone(const FiniteAlgebra& alg, const Region& c, const Entourage& w,
                                const Region& c_small, const Entourage& w_large);

/// Carrier ids whose embedded value lies in the region, ascending.
std::vector<ElementId> preimage(const FiniteAlgebra& alg, const Region& region);

}  // namespace fapprox
