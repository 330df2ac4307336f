#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fapprox/finite_algebra.hpp"

namespace fapprox {

/// Candidate finite rings. Element ids: residues for Z/n, mixed radix for
/// products (first factor least significant), coefficient vectors c_0 + c_1 p +
/// ... for GF(p^k), and a + b p + c p^2 for the matrix [[a, b], [0, c]].
struct RingSpec {
  enum class Family { zn, product, galois, upper_triangular };

  Family family = Family::zn;
  std::vector<unsigned long> moduli;  // zn: {n}; product: factor orders
  unsigned long p = 2;
  unsigned k = 1;

  static RingSpec zn(unsigned long n) { return {Family::zn, {n}, 0, 1}; }
  static RingSpec product(std::vector<unsigned long> factors) { return {Family::product, std::move(factors), 0, 1}; }
  static RingSpec galois(unsigned long p, unsigned k) { return {Family::galois, {}, p, k}; }
  static RingSpec upper_triangular(unsigned long p) { return {Family::upper_triangular, {}, p, 1}; }

  std::uint64_t order() const;
  std::string name() const;
};

inline constexpr std::uint64_t kRingOrderLimit = 512;

struct Ring {
  std::string name;
  FiniteAlgebra algebra;  // ring signature, no embedding
};

/// Builds each ring and checks the ring axioms exhaustively; throws if an
/// order exceeds max_order or a law fails.
std::vector<Ring> enumerate_rings(const std::vector<RingSpec>& specs, std::uint64_t max_order = kRingOrderLimit);
Ring build_ring(const RingSpec& spec, std::uint64_t max_order = kRingOrderLimit);

/// Description of the first failing ring axiom, or nothing.
std::optional<std::string> ring_axiom_failure(const FiniteAlgebra& alg);

/// Monic irreducible polynomial of degree k over Z/p, coefficients low to
/// high (the leading 1 included); the lexicographically smallest one.
std::vector<unsigned long> irreducible_polynomial(unsigned long p, unsigned k);

// ---- embedding search ----

enum class ProbeObjective { combined, additive, multiplicative };

struct EmbeddingSearchConfig {
  Rational a{2};
  Rational epsilon{Rational(1, 2)};
  std::uint64_t iterations = 5000;  // per restart
  unsigned restarts = 6;
  std::uint64_t seed = 1;
  ProbeObjective objective = ProbeObjective::combined;
};

/// Largest homomorphism violation |j(x o y) - j(x) o j(y)| over pairs whose
/// exact result lies in [-a, a], divided by eps.
struct EmbeddingError {
  Rational additive;
  Rational multiplicative;

  Rational combined() const { return additive < multiplicative ? multiplicative : additive; }
  Rational get(ProbeObjective objective) const;
};

struct EmbeddingResult {
  EmbeddingError error;
  /// j(x) = grid_index[x] * eps, each index in [-K, K] with K = floor(a / eps).
  std::vector<long> grid_index;
  std::uint64_t moves = 0;

  /// The ring with this embedding attached.
  FiniteAlgebra embedded(const FiniteAlgebra& ring, const Rational& epsilon) const;
};

/// Thrown when the order is below the 2K + 1 grid points every embedding must hit.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Grid points kε, |k| <= K, that a (C, W)-grid on [-a, a] must contain.
long grid_points(const Rational& a, const Rational& epsilon);

/// Error of one grid embedding (direct evaluation).
EmbeddingError embedding_error(const FiniteAlgebra& alg, const std::vector<long>& grid_index, const Rational& a,
                               const Rational& epsilon);

/// Hill climbing over surjective grid embeddings (single reassignments and
/// swaps), restarted from affine and random starts; deterministic per seed.
/// `start`, if given, is tried as an extra initial embedding.
EmbeddingResult best_embedding_error(const FiniteAlgebra& alg, const EmbeddingSearchConfig& config,
                                     const std::optional<std::vector<long>>& start = std::nullopt);

// ---- report ----

struct ProbeCell {
  Rational a;
  Rational epsilon;
};

/// A family supplies candidate rings per cell.
struct ProbeFamily {
  std::string name;
  std::function<std::vector<RingSpec>(const ProbeCell&)> members;
};

/// Z/N for N from the grid size 2K + 1 up to 2K + 1 + extra.
ProbeFamily zn_family(unsigned extra = 4);
ProbeFamily fixed_family(std::string name, std::vector<RingSpec> members);

struct ProbeEntry {
  std::string family;
  ProbeCell cell;
  bool control = false;
  bool feasible = false;
  std::string best_ring;
  std::uint64_t order = 0;
  std::size_t candidates = 0;
  EmbeddingError error;  // normalized by eps
};

struct ProbeReport {
  std::string header;
  ProbeObjective objective = ProbeObjective::combined;
  std::vector<ProbeEntry> entries;

  std::string to_json() const;
  std::string to_table() const;
};

/// Per family and cell, the smallest error found over the family's rings;
/// with `control` a canonical grid algebra (not a ring) is probed alongside.
ProbeReport probe_report(const std::vector<ProbeFamily>& families, const std::vector<ProbeCell>& ladder,
                         const EmbeddingSearchConfig& config, bool control = true);

}  // namespace fapprox
