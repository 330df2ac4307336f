#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fapprox/finite_algebra.hpp"
#include "fapprox/rational.hpp"

namespace fapprox {

/// Finite p-adic expansion sum d_i p^(valuation + i), little-endian digits.
/// Canonical: no zero lowest digit and no zero trailing digit; zero has no digits.
struct PadicDigits {
  unsigned long p = 2;
  long valuation = 0;
  std::vector<unsigned> digits;

  /// Exact conversion; x must be non-negative with a p-power denominator.
  static PadicDigits from_rational(const Rational& x, unsigned long p);
  /// Parses "p^v * (d0 d1 ...)" for the given prime.
  static PadicDigits parse(std::string_view text, unsigned long p);

  bool is_zero() const { return digits.empty(); }
  Rational value() const;
  std::string to_string() const;

  friend bool operator==(const PadicDigits&, const PadicDigits&) = default;
};

/// |x|_p = p^{-valuation}; 0 for zero.
Rational padic_norm(const PadicDigits& x);

struct HmnParams {
  unsigned long p = 2;
  unsigned m = 0;
  unsigned n = 1;

  /// p^{m+n}, the carrier size.
  std::uint64_t modulus() const;
};

/// Default desk limit on p^{m+n}.
inline constexpr std::uint64_t kPadicCarrierLimit = 100'000;

/// Element ids of H_{m,n} are the scaled values p^m alpha in [0, p^{m+n}).
Rational hmn_value(ElementId id, const HmnParams& params);
/// Id of alpha; alpha must be a carrier element.
ElementId hmn_id(const Rational& alpha, const HmnParams& params);

ElementId hat_add(ElementId a, ElementId b, const HmnParams& params);
ElementId hat_mul(ElementId a, ElementId b, const HmnParams& params);

/// True iff alpha * beta lies in p^{-m} Z_p, tested as: the digits c_k of
/// (p^m alpha)(p^m beta) vanish for k < m.
bool hat_product_in_ball(ElementId a, ElementId b, const HmnParams& params);

/// Z/p^n with inclusion into Z_p.
FiniteAlgebra build_Kn(unsigned long p, unsigned n, std::uint64_t limit = kPadicCarrierLimit);

/// H_{m,n} with the hat operations. Requires m < n (m = 0 gives K_n).
FiniteAlgebra build_Hmn(const HmnParams& params, std::uint64_t limit = kPadicCarrierLimit);

}  // namespace fapprox
