#include "fapprox/real_systems.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <memory>
#include <optional>

namespace fapprox {

namespace {

using u128 = unsigned __int128;

/// r with 10^{r-1} <= a < 10^r, for a > 0.
long decimal_order(const Rational& a) {
  long r = static_cast<long>(mpz_sizeinbase(a.get_num_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(a.get_den_mpz_t(), 10));
  while (a >= pow_int(Rational(10), r)) ++r;
  while (a < pow_int(Rational(10), r - 1)) --r;
  return r;
}

DecimalFP saturated(int sign, const FPParams& params) {
  return {sign, params.P, Integer(pow10(params.Q) - 1), params.Q};
}

void check_params(const FPParams& params) {
  if (params.P < 1 || params.Q < 1) throw Error("floating-point parameters need P >= 1 and Q >= 1");
}

std::uint64_t pow10_u64(unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= 10;
  return r;
}

u128 pow10_u128(unsigned e) {
  u128 r = 1;
  for (unsigned i = 0; i < e; ++i) r *= 10;
  return r;
}

unsigned digit_count(u128 v) {
  static const auto table = [] {
    std::array<u128, 39> t{};
    for (unsigned i = 0; i < t.size(); ++i) t[i] = pow10_u128(i);
    return t;
  }();
  unsigned d = 0;
  while (d < table.size() && v >= table[d]) ++d;
  return d;
}

/// Integer fast path for small Q; nullopt when the operands do not fit.
struct SmallFP {
  int sign;
  long exponent;
  std::uint64_t mantissa;
};

std::optional<SmallFP> small(const DecimalFP& x) {
  if (x.digits > 18) return std::nullopt;
  return SmallFP{x.sign, x.exponent, x.sign == 0 ? 0 : x.mantissa.get_ui()};
}

/// fp_round of sign * s * 10^e10 with 128-bit magnitude; needs Q <= 18.
SmallFP round_small(int sign, u128 s, long e10, const FPParams& params) {
  if (s == 0) return {0, 0, 0};
  const auto d = static_cast<long>(digit_count(s));
  const long r = d + e10;
  if (r > params.P) return {sign, params.P, pow10_u64(params.Q) - 1};
  if (r < -params.P) return {0, 0, 0};
  const long shift = d - static_cast<long>(params.Q);
  u128 mant = s;
  if (shift > 0) {
    mant /= pow10_u128(static_cast<unsigned>(shift));
  } else {
    mant *= pow10_u128(static_cast<unsigned>(-shift));
  }
  return {sign, r, static_cast<std::uint64_t>(mant)};
}

DecimalFP round_scaled(int sign, u128 s, long e10, const FPParams& params) {
  SmallFP r = round_small(sign, s, e10, params);
  if (r.sign == 0) return DecimalFP::zero(params.Q);
  return {r.sign, r.exponent, Integer(static_cast<unsigned long>(r.mantissa)), params.Q};
}

/// Sum of two in-range values with Q digits; needs 2P + Q <= 36.
SmallFP small_add(const SmallFP& x, const SmallFP& y, const FPParams& params) {
  if (x.sign == 0) return y;
  if (y.sign == 0) return x;
  const long emin = std::min(x.exponent, y.exponent);
  const u128 a = static_cast<u128>(x.mantissa) * pow10_u128(static_cast<unsigned>(x.exponent - emin));
  const u128 b = static_cast<u128>(y.mantissa) * pow10_u128(static_cast<unsigned>(y.exponent - emin));
  const long e10 = emin - static_cast<long>(params.Q);
  if (x.sign == y.sign) return round_small(x.sign, a + b, e10, params);
  if (a == b) return {0, 0, 0};
  return a > b ? round_small(x.sign, a - b, e10, params) : round_small(y.sign, b - a, e10, params);
}

SmallFP small_mul(const SmallFP& x, const SmallFP& y, const FPParams& params) {
  if (x.sign == 0 || y.sign == 0) return {0, 0, 0};
  const u128 prod = static_cast<u128>(x.mantissa) * y.mantissa;
  return round_small(x.sign * y.sign, prod, x.exponent + y.exponent - 2 * static_cast<long>(params.Q), params);
}

}  // namespace

Integer FPParams::carrier_size() const {
  return Integer(2 * (2 * P + 1) * 9) * pow10(Q - 1) + 1;
}

Rational DecimalFP::value() const {
  if (sign == 0) return 0;
  Rational v = Rational(mantissa) * pow_int(Rational(10), exponent - static_cast<long>(digits));
  return sign < 0 ? Rational(-v) : v;
}

DecimalFP DecimalFP::operator-() const {
  DecimalFP r = *this;
  r.sign = -r.sign;
  return r;
}

std::string DecimalFP::to_string() const {
  std::string mant = sign == 0 ? std::string(digits, '0') : mantissa.get_str();
  std::string out = sign < 0 ? "-0." : "0.";
  out += mant;
  out += exponent < 0 ? "e-" : "e+";
  out += std::to_string(exponent < 0 ? -exponent : exponent);
  return out;
}

DecimalFP DecimalFP::parse(std::string_view text, const FPParams& params) {
  check_params(params);
  std::string s(text);
  auto fail = [&](const std::string& why) -> DecimalFP {
    throw Error("malformed floating-point value '" + s + "': " + why);
  };
  std::size_t pos = 0;
  int sign = 1;
  if (pos < s.size() && s[pos] == '-') {
    sign = -1;
    ++pos;
  }
  if (s.compare(pos, 2, "0.") != 0) return fail("expected '0.'");
  pos += 2;
  std::size_t e = s.find('e', pos);
  if (e == std::string::npos) return fail("missing exponent");
  std::string mant = s.substr(pos, e - pos);
  if (mant.size() != params.Q) return fail("expected " + std::to_string(params.Q) + " digits");
  for (char c : mant) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return fail("non-digit in mantissa");
  }
  std::string exp = s.substr(e + 1);
  if (exp.size() < 2 || (exp[0] != '+' && exp[0] != '-')) return fail("exponent needs a sign");
  for (std::size_t i = 1; i < exp.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(exp[i]))) return fail("non-digit in exponent");
  }
  long ev = std::stol(exp.substr(1));
  if (exp[0] == '-') ev = -ev;
  Integer m(mant, 10);
  if (m == 0) {
    if (ev != 0 || sign < 0) return fail("zero is written 0.0...0e+0");
    return DecimalFP::zero(params.Q);
  }
  if (mant[0] == '0') return fail("leading mantissa digit must be nonzero");
  if (ev > params.P || ev < -params.P) return fail("exponent outside [-P, P]");
  return {sign, ev, m, params.Q};
}

DecimalFP fp_round(const Rational& x, const FPParams& params) {
  check_params(params);
  if (sgn(x) == 0) return DecimalFP::zero(params.Q);
  const int sign = sgn(x) < 0 ? -1 : 1;
  const Rational a = abs(x);
  const long r = decimal_order(a);
  if (r > params.P) return saturated(sign, params);
  if (r < -params.P) return DecimalFP::zero(params.Q);
  Integer mant = floor_of(a * pow_int(Rational(10), static_cast<long>(params.Q) - r));
  return {sign, r, mant, params.Q};
}

DecimalFP fp_round(const ExactScalar& x, const FPParams& params) {
  if (x.exact()) return fp_round(x.value, params);
  DecimalFP lo = fp_round(x.lo(), params);
  DecimalFP hi = fp_round(x.hi(), params);
  if (!(lo == hi)) {
    throw UndecidableError("enclosure of " + to_decimal_string(x.value) + " straddles a " +
                           std::to_string(params.Q) + "-digit truncation boundary");
  }
  return lo;
}

DecimalFP fp_add(const DecimalFP& x, const DecimalFP& y, const FPParams& params) {
  auto sx = small(x);
  auto sy = small(y);
  if (sx && sy) {
    if (sx->sign == 0) return fp_round(y.value(), params);
    if (sy->sign == 0) return fp_round(x.value(), params);
    const long emin = std::min(sx->exponent, sy->exponent);
    const long dx = sx->exponent - emin;
    const long dy = sy->exponent - emin;
    if (dx + static_cast<long>(x.digits) <= 36 && dy + static_cast<long>(y.digits) <= 36) {
      const u128 a = static_cast<u128>(sx->mantissa) * pow10_u64(static_cast<unsigned>(std::min(dx, 18L))) *
                     pow10_u64(static_cast<unsigned>(std::max(dx - 18, 0L)));
      const u128 b = static_cast<u128>(sy->mantissa) * pow10_u64(static_cast<unsigned>(std::min(dy, 18L))) *
                     pow10_u64(static_cast<unsigned>(std::max(dy - 18, 0L)));
      // Both operands share the scale 10^{emin - Q}; digits equal Q.
      const long e10 = emin - static_cast<long>(x.digits);
      if (x.digits == y.digits && x.digits == params.Q) {
        if (sx->sign == sy->sign) return round_scaled(sx->sign, a + b, e10, params);
        if (a == b) return DecimalFP::zero(params.Q);
        return a > b ? round_scaled(sx->sign, a - b, e10, params) : round_scaled(sy->sign, b - a, e10, params);
      }
    }
  }
  return fp_round(x.value() + y.value(), params);
}

DecimalFP fp_sub(const DecimalFP& x, const DecimalFP& y, const FPParams& params) { return fp_add(x, -y, params); }

DecimalFP fp_mul(const DecimalFP& x, const DecimalFP& y, const FPParams& params) {
  auto sx = small(x);
  auto sy = small(y);
  if (sx && sy && x.digits == params.Q && y.digits == params.Q) {
    if (sx->sign == 0 || sy->sign == 0) return DecimalFP::zero(params.Q);
    const u128 prod = static_cast<u128>(sx->mantissa) * sy->mantissa;
    const long e10 = sx->exponent + sy->exponent - 2 * static_cast<long>(params.Q);
    return round_scaled(sx->sign * sy->sign, prod, e10, params);
  }
  return fp_round(x.value() * y.value(), params);
}

DecimalFP fp_div(const DecimalFP& x, const DecimalFP& y, const FPParams& params) {
  if (y.is_zero()) throw Error("floating-point division by zero");
  return fp_round(x.value() / y.value(), params);
}

Rational fp_max(const FPParams& params) {
  return Rational(pow10(params.Q) - 1) * pow_int(Rational(10), params.P - static_cast<long>(params.Q));
}

namespace {

std::uint64_t positives_per_sign(const FPParams& params) {
  Integer k = Integer(2 * params.P + 1) * 9 * pow10(params.Q - 1);
  if (!fits_int64(k)) throw Error("floating-point carrier too large");
  return static_cast<std::uint64_t>(k.get_si());
}

}  // namespace

ElementId fp_id(const DecimalFP& x, const FPParams& params) {
  const std::uint64_t k = positives_per_sign(params);
  if (x.is_zero()) return static_cast<ElementId>(k);
  const std::uint64_t block = 9 * pow10_u64(params.Q - 1);
  const std::uint64_t i = static_cast<std::uint64_t>(x.exponent + params.P) * block +
                          (x.mantissa.get_ui() - pow10_u64(params.Q - 1));
  return static_cast<ElementId>(x.sign > 0 ? k + 1 + i : k - 1 - i);
}

DecimalFP fp_from_id(ElementId id, const FPParams& params) {
  const std::uint64_t k = positives_per_sign(params);
  if (id == k) return DecimalFP::zero(params.Q);
  if (id > 2 * k) throw Error("floating-point id out of range");
  const int sign = id > k ? 1 : -1;
  const std::uint64_t i = id > k ? id - k - 1 : k - 1 - id;
  const std::uint64_t block = 9 * pow10_u64(params.Q - 1);
  return {sign, static_cast<long>(i / block) - params.P,
          Integer(static_cast<unsigned long>(pow10_u64(params.Q - 1) + i % block)), params.Q};
}

FiniteAlgebra build_APQ(const FPParams& params, std::uint64_t limit) {
  check_params(params);
  const Integer size = params.carrier_size();
  if (size > Integer(static_cast<unsigned long>(limit))) {
    throw Error("A_PQ carrier of size " + size.get_str() + " exceeds the limit " + std::to_string(limit));
  }
  std::vector<Operation> ops;
  if (params.Q <= 18 && 2 * params.P + static_cast<long>(params.Q) <= 36) {
    // Same arithmetic on ids without big integers.
    const std::uint64_t k = positives_per_sign(params);
    const std::uint64_t lead = pow10_u64(params.Q - 1);
    const std::uint64_t block = 9 * lead;
    auto decode = [params, k, lead, block](ElementId id) -> SmallFP {
      if (id == k) return {0, 0, 0};
      const int sign = id > k ? 1 : -1;
      const std::uint64_t i = id > k ? id - k - 1 : k - 1 - id;
      return {sign, static_cast<long>(i / block) - params.P, lead + i % block};
    };
    auto encode = [params, k, lead, block](const SmallFP& x) -> ElementId {
      if (x.sign == 0) return static_cast<ElementId>(k);
      const std::uint64_t i = static_cast<std::uint64_t>(x.exponent + params.P) * block + (x.mantissa - lead);
      return static_cast<ElementId>(x.sign > 0 ? k + 1 + i : k - 1 - i);
    };
    ops.push_back(Operation::lazy(2, [=](std::span<const ElementId> a) {
      return encode(small_add(decode(a[0]), decode(a[1]), params));
    }));
    ops.push_back(Operation::lazy(2, [=](std::span<const ElementId> a) {
      return encode(small_mul(decode(a[0]), decode(a[1]), params));
    }));
  } else {
    ops.push_back(Operation::lazy(2, [params](std::span<const ElementId> a) {
      return fp_id(fp_add(fp_from_id(a[0], params), fp_from_id(a[1], params), params), params);
    }));
    ops.push_back(Operation::lazy(2, [params](std::span<const ElementId> a) {
      return fp_id(fp_mul(fp_from_id(a[0], params), fp_from_id(a[1], params), params), params);
    }));
  }
  Embedding emb;
  const long span = 2 * params.P + static_cast<long>(params.Q);
  if (span <= 18) {
    // value = sign * mantissa * 10^{e - Q} = numerator / 10^{P + Q}
    const auto den = static_cast<std::int64_t>(pow10_u64(static_cast<unsigned>(params.P + params.Q)));
    auto numerators = std::make_shared<std::vector<std::int64_t>>(size.get_ui());
    for (ElementId id = 0; id < numerators->size(); ++id) {
      DecimalFP x = fp_from_id(id, params);
      if (x.is_zero()) continue;
      auto m = static_cast<std::int64_t>(x.mantissa.get_ui() * pow10_u64(static_cast<unsigned>(x.exponent + params.P)));
      (*numerators)[id] = x.sign < 0 ? -m : m;
    }
    emb = Embedding::scaled(den, [numerators](ElementId id) { return (*numerators)[id]; });
  } else {
    emb = Embedding::function([params](ElementId id) { return fp_from_id(id, params).value(); });
  }
  FiniteAlgebra alg(Signature::ring(), size.get_ui(), std::move(ops), Ambient::real(), std::move(emb));
  alg.set_labeler([params](ElementId id) { return to_decimal_string(fp_from_id(id, params).value()); });
  return alg;
}

long balanced_mod(const Integer& x, long N) {
  Integer r = x % N;
  if (r < 0) r += N;
  long v = r.get_si();
  if (v > N / 2) v -= N;
  return v;
}

long mod_add(long k, long m, const ModularParams& params) {
  const long n = params.N();
  long r = ((k + m) % n + n) % n;
  return r > params.M ? r - n : r;
}

long mod_mul(long k, long m, const ModularParams& params) {
  const Integer prod = Integer(k) * m * params.epsilon.get_num();
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), prod.get_mpz_t(), params.epsilon.get_den_mpz_t());
  return balanced_mod(q, params.N());
}

FiniteAlgebra build_modular(const ModularParams& params) {
  if (params.M < 1) throw Error("modular system needs M >= 1");
  if (sgn(params.epsilon) <= 0) throw Error("modular system needs a positive spacing");
  const long m = params.M;
  const auto size = static_cast<std::size_t>(params.N());
  const Integer u = params.epsilon.get_num();
  const Integer v = params.epsilon.get_den();
  if (!fits_int64(u) || !fits_int64(v) || !fits_int64(Integer(u * m))) {
    throw Error("modular spacing out of 64-bit range");
  }
  std::vector<Operation> ops;
  if (size * size <= 4'000'000) {
    std::vector<ElementId> add(size * size);
    std::vector<ElementId> mul(size * size);
    for (long a = -m; a <= m; ++a) {
      for (long b = -m; b <= m; ++b) {
        const std::size_t idx = static_cast<std::size_t>(a + m) * size + static_cast<std::size_t>(b + m);
        add[idx] = static_cast<ElementId>(mod_add(a, b, params) + m);
        mul[idx] = static_cast<ElementId>(mod_mul(a, b, params) + m);
      }
    }
    ops.push_back(Operation::table(2, std::move(add)));
    ops.push_back(Operation::table(2, std::move(mul)));
  } else {
    ops.push_back(Operation::lazy(2, [params, m](std::span<const ElementId> a) {
      return static_cast<ElementId>(mod_add(static_cast<long>(a[0]) - m, static_cast<long>(a[1]) - m, params) + m);
    }));
    ops.push_back(Operation::lazy(2, [params, m](std::span<const ElementId> a) {
      return static_cast<ElementId>(mod_mul(static_cast<long>(a[0]) - m, static_cast<long>(a[1]) - m, params) + m);
    }));
  }
  const std::int64_t su = u.get_si();
  Embedding emb = Embedding::scaled(v.get_si(), [m, su](ElementId id) { return (static_cast<std::int64_t>(id) - m) * su; });
  return FiniteAlgebra(Signature::ring(), size, std::move(ops), Ambient::real(), std::move(emb));
}

SufficientParams sufficient_params_inverse(const Rational& b, const Rational& delta, unsigned digits) {
  if (b <= 1) throw Error("sufficient_params_inverse needs b > 1");
  if (sgn(delta) <= 0) throw Error("sufficient_params_inverse needs delta > 0");
  const Rational t = (2 * b + 1) / 2;
  const ExactScalar root = root_enclosure(Rational(t * t + delta), 2, digits);
  const ExactScalar eps0 = root - ExactScalar(t);
  const ExactScalar first = ExactScalar(b) + eps0;
  const ExactScalar second = (ExactScalar(Rational(2 * b)) + eps0) * eps0 + ExactScalar(Rational(1));
  const Rational lo = std::max(first.lo(), second.lo());
  const Rational hi = std::max(first.hi(), second.hi());
  SufficientParams out;
  out.eps0 = eps0;
  out.a0 = ExactScalar(Rational((lo + hi) / 2), Rational((hi - lo) / 2));
  out.eps0_lower = eps0.lo();
  out.a0_upper = hi;
  return out;
}

}  // namespace fapprox
