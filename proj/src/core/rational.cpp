#include "fapprox/rational.hpp"

#include <cctype>
#include <limits>

namespace fapprox {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!all_digits(s)) throw Error("malformed number: '" + std::string(s) + "'");
  return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw Error("empty number");
  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  Rational result;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(s.substr(0, slash));
    Integer den = parse_integer(s.substr(slash + 1));
    if (den == 0) throw Error("zero denominator in '" + std::string(text) + "'");
    result = Rational(num, den);
  } else {
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view exp_text = s.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      Integer ev = parse_integer(exp_text);
      if (ev > 10000) throw Error("exponent out of range in '" + std::string(text) + "'");
      exponent = ev.get_si() * (exp_negative ? -1 : 1);
      s = s.substr(0, e);
    }
    std::string_view int_part = s;
    std::string_view frac_part;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      int_part = s.substr(0, dot);
      frac_part = s.substr(dot + 1);
      if (int_part.empty() && frac_part.empty()) throw Error("malformed number: '" + std::string(text) + "'");
      if (!frac_part.empty() && !all_digits(frac_part)) {
        throw Error("malformed number: '" + std::string(text) + "'");
      }
    }
    Integer whole = int_part.empty() ? Integer(0) : parse_integer(int_part);
    Integer digits = frac_part.empty() ? Integer(0) : Integer(std::string(frac_part), 10);
    result = Rational(whole) + Rational(digits, pow10(frac_part.size()));
    result.canonicalize();
    result *= pow_int(Rational(10), exponent);
  }
  result.canonicalize();
  return negative ? Rational(-result) : result;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_decimal_string(const Rational& q) {
  Integer den = q.get_den();
  unsigned long twos = 0;
  unsigned long fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return to_string(q);
  if (q.get_den() == 1) return q.get_num().get_str();
  unsigned long places = std::max(twos, fives);
  Integer scaled = q.get_num() * pow10(places) / q.get_den();
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.get_str();
  if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
  digits.insert(digits.size() - places, ".");
  return negative ? "-" + digits : digits;
}

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational pow_int(const Rational& base, long exponent) {
  if (exponent == 0) return Rational(1);
  if (exponent < 0) {
    if (sgn(base) == 0) throw Error("zero raised to a negative power");
    return Rational(1) / pow_int(base, -exponent);
  }
  Integer num;
  Integer den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Integer pow10(unsigned long exponent) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, exponent);
  return r;
}

long padic_valuation(const Rational& q, unsigned long p) {
  if (sgn(q) == 0) throw Error("valuation of zero is undefined");
  long v = 0;
  Integer num = abs(q.get_num());
  Integer den = q.get_den();
  while (mpz_divisible_ui_p(num.get_mpz_t(), p)) {
    num /= p;
    ++v;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), p)) {
    den /= p;
    --v;
  }
  return v;
}

Rational padic_abs(const Rational& q, unsigned long p) {
  if (sgn(q) == 0) return Rational(0);
  return pow_int(Rational(p), -padic_valuation(q, p));
}

bool fits_int64(const Integer& z) {
  return z >= Integer(std::numeric_limits<std::int64_t>::min()) &&
         z <= Integer(std::numeric_limits<std::int64_t>::max());
}

ExactScalar::ExactScalar(Rational v, Rational r) : value(std::move(v)), radius(std::move(r)) {
  if (sgn(radius) < 0) throw Error("negative enclosure radius");
}

ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
  return {a.value + b.value, a.radius + b.radius};
}

ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) {
  return {a.value - b.value, a.radius + b.radius};
}

ExactScalar operator-(const ExactScalar& a) { return {-a.value, a.radius}; }

ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
  Rational r = abs(a.value) * b.radius + abs(b.value) * a.radius + a.radius * b.radius;
  return {a.value * b.value, r};
}

bool decide_less(const ExactScalar& a, const ExactScalar& b) {
  if (a.hi() < b.lo()) return true;
  if (a.lo() >= b.hi()) return false;
  throw UndecidableError("enclosures too wide to decide " + to_decimal_string(a.value) + " < " +
                         to_decimal_string(b.value));
}

bool decide_abs_less(const ExactScalar& a, const ExactScalar& b, const Rational& eps) {
  Rational d = abs(a.value - b.value);
  Rational r = a.radius + b.radius;
  if (d + r < eps) return true;
  if (d - r >= eps) return false;
  throw UndecidableError("enclosures too wide to decide distance against " + to_decimal_string(eps));
}

ExactScalar root_enclosure(const Rational& x, unsigned k, unsigned digits) {
  if (sgn(x) < 0) throw Error("root of a negative number");
  if (k == 0) throw Error("zeroth root");
  Integer scale = pow10(digits);
  Integer target = floor_of(x * Rational(pow10(static_cast<unsigned long>(k) * digits)));
  // Largest r with r^k <= target.
  Integer lo = 0;
  Integer hi = 1;
  auto power = [k](const Integer& v) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), v.get_mpz_t(), k);
    return out;
  };
  while (power(hi) <= target) hi *= 2;
  while (hi - lo > 1) {
    Integer mid = (lo + hi) / 2;
    if (power(mid) <= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  Rational value(2 * lo + 1, 2 * scale);
  value.canonicalize();
  Rational radius(1, 2 * scale);
  radius.canonicalize();
  return {value, radius};
}

ExactScalar sin_enclosure(const Rational& x, const Rational& tol) {
  if (sgn(tol) <= 0) throw Error("sin_enclosure needs a positive tolerance");
  Rational sum = 0;
  Rational term = x;  // x^(2k+1)/(2k+1)!, signed
  Rational x2 = x * x;
  for (unsigned long k = 0;; ++k) {
    sum += term;
    // Lagrange remainder after degree 2k+1 (equivalently 2k+2): |x|^(2k+3)/(2k+3)!.
    Rational next = -term * x2 / Rational((2 * k + 2) * (2 * k + 3));
    if (abs(next) <= tol) return {sum, abs(next)};
    term = next;
    if (k > 100000) throw Error("sin_enclosure failed to converge");
  }
}

}  // namespace fapprox
