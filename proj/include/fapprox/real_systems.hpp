#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "fapprox/finite_algebra.hpp"
#include "fapprox/rational.hpp"

namespace fapprox {

struct FPParams {
  long P = 1;      // exponent bound
  unsigned Q = 1;  // mantissa digits

  /// 2 (2P+1) 9 10^{Q-1} + 1.
  Integer carrier_size() const;
};

/// sign * 10^exponent * 0.a_1...a_Q, stored with the mantissa as the integer
/// a_1...a_Q (leading digit nonzero). Zero has sign 0, exponent 0, mantissa 0.
struct DecimalFP {
  int sign = 0;
  long exponent = 0;
  Integer mantissa = 0;
  unsigned digits = 1;

  static DecimalFP zero(unsigned digits) { return {0, 0, 0, digits}; }

  bool is_zero() const { return sign == 0; }
  Rational value() const;
  DecimalFP operator-() const;
  /// "[-]0.DDDDe+E" with exactly `digits` digits.
  std::string to_string() const;
  /// Parses the text form; the digit count must equal params.Q.
  static DecimalFP parse(std::string_view text, const FPParams& params);

  friend bool operator==(const DecimalFP&, const DecimalFP&) = default;
};

/// Keeps the first Q digits of the normal form, saturates to +-10^P 0.9..9
/// above the exponent range and flushes to zero below it.
DecimalFP fp_round(const ExactScalar& x, const FPParams& params);
DecimalFP fp_round(const Rational& x, const FPParams& params);

DecimalFP fp_add(const DecimalFP& x, const DecimalFP& y, const FPParams& params);
DecimalFP fp_sub(const DecimalFP& x, const DecimalFP& y, const FPParams& params);
DecimalFP fp_mul(const DecimalFP& x, const DecimalFP& y, const FPParams& params);
DecimalFP fp_div(const DecimalFP& x, const DecimalFP& y, const FPParams& params);

/// Largest representable magnitude 10^P (1 - 10^{-Q}).
Rational fp_max(const FPParams& params);

/// Carrier ids of A_PQ are sorted by value: the most negative number has id 0
/// and zero sits in the middle.
ElementId fp_id(const DecimalFP& x, const FPParams& params);
DecimalFP fp_from_id(ElementId id, const FPParams& params);

inline constexpr std::uint64_t kFPCarrierLimit = 1'000'000;

/// The floating-point algebra A_PQ with lazily evaluated + and * and the
/// exact-value embedding.
FiniteAlgebra build_APQ(const FPParams& params, std::uint64_t limit = kFPCarrierLimit);

struct ModularParams {
  long M = 1;
  Rational epsilon{1};

  long N() const { return 2 * M + 1; }
};

/// Carrier ids of A'_{M,eps} are k + M for k in [-M, M].
long balanced_mod(const Integer& x, long N);
long mod_add(long k, long m, const ModularParams& params);
/// Balanced residue of floor(k m eps).
long mod_mul(long k, long m, const ModularParams& params);

FiniteAlgebra build_modular(const ModularParams& params);

struct SufficientParams {
  ExactScalar eps0;
  ExactScalar a0;
  /// Safe choices: a strictly above a0 and eps strictly below eps0 whenever
  /// a > a0_upper and eps < eps0_lower.
  Rational eps0_lower;
  Rational a0_upper;
};

/// eps0 = sqrt(((2b+1)/2)^2 + delta) - (2b+1)/2 and
/// a0 = max{b + eps0, (2b + eps0) eps0 + 1}, as certified enclosures.
SufficientParams sufficient_params_inverse(const Rational& b, const Rational& delta, unsigned digits = 30);

}  // namespace fapprox
