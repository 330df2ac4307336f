#include "fapprox/padic_systems.hpp"

#include <cctype>
#include <sstream>

namespace fapprox {

namespace {

Integer ipow(unsigned long p, unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, e);
  return r;
}

void canonicalize(PadicDigits& x) {
  while (!x.digits.empty() && x.digits.back() == 0) x.digits.pop_back();
  std::size_t lead = 0;
  while (lead < x.digits.size() && x.digits[lead] == 0) ++lead;
  if (lead == x.digits.size()) {
    x.digits.clear();
    x.valuation = 0;
    return;
  }
  x.digits.erase(x.digits.begin(), x.digits.begin() + static_cast<long>(lead));
  x.valuation += static_cast<long>(lead);
}

}  // namespace

PadicDigits PadicDigits::from_rational(const Rational& x, unsigned long p) {
  if (!is_prime(p)) throw Error(std::to_string(p) + " is not prime");
  if (sgn(x) < 0) throw Error("negative rationals have no finite p-adic expansion");
  PadicDigits out;
  out.p = p;
  if (sgn(x) == 0) return out;
  Integer den = x.get_den();
  long shift = 0;
  while (den % p == 0) {
    den /= p;
    ++shift;
  }
  if (den != 1) throw Error("denominator of " + fapprox::to_string(x) + " is not a power of " + std::to_string(p));
  Integer num = x.get_num();
  out.valuation = -shift;
  while (num != 0) {
    out.digits.push_back(static_cast<unsigned>(Integer(num % p).get_ui()));
    num /= p;
  }
  canonicalize(out);
  return out;
}

PadicDigits PadicDigits::parse(std::string_view text, unsigned long p) {
  // p^v * (d0 d1 ...)
  std::string s(text);
  auto fail = [&]() -> PadicDigits { throw Error("malformed p-adic value: '" + s + "'"); };
  std::size_t caret = s.find('^');
  std::size_t star = s.find('*');
  std::size_t open = s.find('(');
  std::size_t close = s.find(')');
  if (caret == std::string::npos || star == std::string::npos || open == std::string::npos ||
      close == std::string::npos || !(caret < star && star < open && open < close)) {
    return fail();
  }
  unsigned long base = 0;
  long v = 0;
  try {
    base = std::stoul(s.substr(0, caret));
    std::size_t used = 0;
    std::string vtext = s.substr(caret + 1, star - caret - 1);
    v = std::stol(vtext, &used);
    for (std::size_t i = used; i < vtext.size(); ++i) {
      if (!std::isspace(static_cast<unsigned char>(vtext[i]))) return fail();
    }
  } catch (const std::logic_error&) {
    return fail();
  }
  if (base != p) throw Error("p-adic value '" + s + "' is not over p = " + std::to_string(p));
  PadicDigits out;
  out.p = p;
  out.valuation = v;
  std::istringstream in(s.substr(open + 1, close - open - 1));
  std::string tok;
  while (in >> tok) {
    for (char c : tok) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return fail();
    }
    unsigned long d = std::stoul(tok);
    if (d >= p) throw Error("digit " + tok + " out of range for p = " + std::to_string(p));
    out.digits.push_back(static_cast<unsigned>(d));
  }
  canonicalize(out);
  return out;
}

Rational PadicDigits::value() const {
  Integer num = 0;
  for (std::size_t i = digits.size(); i-- > 0;) num = num * p + digits[i];
  Rational r(num);
  return r * pow_int(Rational(p), valuation);
}

std::string PadicDigits::to_string() const {
  std::string out = std::to_string(p) + "^" + std::to_string(valuation) + " * (";
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(digits[i]);
  }
  return out + ")";
}

Rational padic_norm(const PadicDigits& x) {
  if (x.is_zero()) return 0;
  return pow_int(Rational(x.p), -x.valuation);
}

std::uint64_t HmnParams::modulus() const {
  Integer r = ipow(p, m + n);
  if (!fits_int64(r)) throw Error("p^(m+n) out of range");
  return static_cast<std::uint64_t>(r.get_si());
}

Rational hmn_value(ElementId id, const HmnParams& params) {
  Rational r(Integer(static_cast<unsigned long>(id)), ipow(params.p, params.m));
  r.canonicalize();
  return r;
}

ElementId hmn_id(const Rational& alpha, const HmnParams& params) {
  Rational scaled = alpha * ipow(params.p, params.m);
  if (scaled.get_den() != 1 || sgn(scaled) < 0 || scaled >= Rational(ipow(params.p, params.m + params.n))) {
    throw Error(fapprox::to_string(alpha) + " is not an element of H_{m,n}");
  }
  return static_cast<ElementId>(scaled.get_num().get_ui());
}

ElementId hat_add(ElementId a, ElementId b, const HmnParams& params) {
  const std::uint64_t mod = params.modulus();
  return static_cast<ElementId>((static_cast<std::uint64_t>(a) + b) % mod);
}

ElementId hat_mul(ElementId a, ElementId b, const HmnParams& params) {
  // Keep digits c_m .. c_{2m+n-1} of (p^m alpha)(p^m beta), rescaled to an id.
  const std::uint64_t mod = params.modulus();
  std::uint64_t pm = 1;
  for (unsigned i = 0; i < params.m; ++i) pm *= params.p;
  const auto prod = static_cast<unsigned __int128>(a) * b;
  return static_cast<ElementId>((prod / pm) % mod);
}

bool hat_product_in_ball(ElementId a, ElementId b, const HmnParams& params) {
  std::uint64_t pm = 1;
  for (unsigned i = 0; i < params.m; ++i) pm *= params.p;
  return (static_cast<unsigned __int128>(a) * b) % pm == 0;
}

FiniteAlgebra build_Hmn(const HmnParams& params, std::uint64_t limit) {
  if (!is_prime(params.p)) throw Error(std::to_string(params.p) + " is not prime");
  if (params.n < 1) throw Error("H_{m,n} needs n >= 1");
  if (params.m >= params.n) throw Error("H_{m,n} is only defined for m < n");
  if (ipow(params.p, params.m + params.n) > limit) {
    throw Error("p^(m+n) exceeds the carrier limit " + std::to_string(limit));
  }
  const std::uint64_t size = params.modulus();
  std::vector<ElementId> add(size * size);
  std::vector<ElementId> mul(size * size);
  for (ElementId a = 0; a < size; ++a) {
    for (ElementId b = 0; b < size; ++b) {
      add[a * size + b] = hat_add(a, b, params);
      mul[a * size + b] = hat_mul(a, b, params);
    }
  }
  std::vector<Operation> ops;
  ops.push_back(Operation::table(2, std::move(add)));
  ops.push_back(Operation::table(2, std::move(mul)));
  std::int64_t den = 1;
  for (unsigned i = 0; i < params.m; ++i) den *= static_cast<std::int64_t>(params.p);
  FiniteAlgebra alg(Signature::ring(), size, std::move(ops), Ambient::padic(params.p),
                    Embedding::scaled(den, [](ElementId id) { return static_cast<std::int64_t>(id); }));
  alg.set_labeler([params](ElementId id) { return to_string(hmn_value(id, params)); });
  return alg;
}

FiniteAlgebra build_Kn(unsigned long p, unsigned n, std::uint64_t limit) {
  return build_Hmn(HmnParams{p, 0, n}, limit);
}

}  // namespace fapprox
