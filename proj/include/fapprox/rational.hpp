#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fapprox {

using Rational = mpq_class;
using Integer = mpz_class;

/// Base error type for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a certified enclosure is too wide to decide a comparison.
class UndecidableError : public Error {
 public:
  using Error::Error;
};

/// Parses "7", "-7", "3/8", "-0.125", "2.0" or "1e-3" into an exact rational.
Rational parse_rational(std::string_view text);

/// "num/den", or "num" for integers. Always canonical.
std::string to_string(const Rational& q);

/// Finite decimal if the denominator is of the form 2^a 5^b, else "num/den".
std::string to_decimal_string(const Rational& q);

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);
Rational pow_int(const Rational& base, long exponent);
Integer pow10(unsigned long exponent);

/// Exponent of the prime p in q. q must be nonzero.
long padic_valuation(const Rational& q, unsigned long p);

/// Rational |q|_p; zero maps to zero.
Rational padic_abs(const Rational& q, unsigned long p);

bool fits_int64(const Integer& z);

/// A rational approximation together with a certified radius: the represented
/// real lies in [value - radius, value + radius]. Exact values have radius 0.
struct ExactScalar {
  Rational value;
  Rational radius{0};

  ExactScalar() = default;
  ExactScalar(Rational v) : value(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  ExactScalar(Rational v, Rational r);

  bool exact() const { return sgn(radius) == 0; }
  Rational lo() const { return value - radius; }
  Rational hi() const { return value + radius; }
};

ExactScalar operator+(const ExactScalar& a, const ExactScalar& b);
ExactScalar operator-(const ExactScalar& a, const ExactScalar& b);
ExactScalar operator*(const ExactScalar& a, const ExactScalar& b);
ExactScalar operator-(const ExactScalar& a);

/// Decides a < b; throws UndecidableError when the enclosures overlap at the
/// decision point.
bool decide_less(const ExactScalar& a, const ExactScalar& b);

/// Decides |a - b| < eps for an exact eps.
bool decide_abs_less(const ExactScalar& a, const ExactScalar& b, const Rational& eps);

/// Enclosure of x^(1/k) for x >= 0 with radius at most 10^-digits/2, computed by
/// integer bisection on floor(x * 10^(k*digits))^(1/k).
ExactScalar root_enclosure(const Rational& x, unsigned k, unsigned digits);

/// Enclosure of sin(x) with radius at most tol, by Taylor series with the
/// alternating-series remainder bound.
ExactScalar sin_enclosure(const Rational& x, const Rational& tol);

}  // namespace fapprox
