#include "fapprox/ambient.hpp"

namespace fapprox {

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Ambient Ambient::padic(unsigned long prime) {
  if (!is_prime(prime)) throw Error(std::to_string(prime) + " is not prime");
  return {AmbientKind::padic, prime};
}

bool Ambient::matches(const Region& r) const {
  switch (kind) {
    case AmbientKind::real:
      return r.is_real();
    case AmbientKind::padic:
      return r.is_padic() && r.ball().p == p;
    case AmbientKind::none:
      return false;
  }
  return false;
}

Rational Ambient::distance(const Rational& x, const Rational& y) const {
  switch (kind) {
    case AmbientKind::real:
      return abs(x - y);
    case AmbientKind::padic:
      return padic_abs(x - y, p);
    case AmbientKind::none:
      break;
  }
  throw Error("algebra has no ambient embedding");
}

bool Ambient::close(const Rational& x, const Rational& y, const Entourage& w) const {
  if (kind == AmbientKind::padic) return distance(x, y) <= w.epsilon;
  return distance(x, y) < w.epsilon;
}

bool Ambient::close(const ExactScalar& x, const ExactScalar& y, const Entourage& w) const {
  if (x.exact() && y.exact()) return close(x.value, y.value, w);
  if (kind != AmbientKind::real) throw Error("enclosures are only meaningful for the real ambient");
  return decide_abs_less(x, y, w.epsilon);
}

std::string Ambient::to_string() const {
  switch (kind) {
    case AmbientKind::real:
      return "real";
    case AmbientKind::padic:
      return "padic(" + std::to_string(p) + ")";
    case AmbientKind::none:
      break;
  }
  return "none";
}

AmbientStructure AmbientStructure::real_field() {
  AmbientStructure s(Ambient::real());
  s.define("+", 2, [](std::span<const ExactScalar> a) { return a[0] + a[1]; });
  s.define("*", 2, [](std::span<const ExactScalar> a) { return a[0] * a[1]; });
  s.builtin_ = {"+", "*"};
  return s;
}

AmbientStructure AmbientStructure::padic_field(unsigned long p) {
  AmbientStructure s(Ambient::padic(p));
  s.define("+", 2, [](std::span<const ExactScalar> a) { return ExactScalar(a[0].value + a[1].value); });
  s.define("*", 2, [](std::span<const ExactScalar> a) { return ExactScalar(a[0].value * a[1].value); });
  s.builtin_ = {"+", "*"};
  return s;
}

AmbientStructure& AmbientStructure::define(const std::string& symbol, unsigned arity, Function f) {
  if (functions_.count(symbol) == 0) order_.push_back(symbol);
  functions_[symbol] = Entry{arity, std::move(f)};
  builtin_.erase(symbol);
  return *this;
}

Signature AmbientStructure::signature() const {
  std::vector<Symbol> symbols;
  for (const auto& name : order_) symbols.push_back({name, functions_.at(name).arity});
  return Signature(std::move(symbols));
}

unsigned AmbientStructure::arity(const std::string& symbol) const {
  auto it = functions_.find(symbol);
  if (it == functions_.end()) throw Error("symbol '" + symbol + "' has no ambient interpretation");
  return it->second.arity;
}

ExactScalar AmbientStructure::apply(const std::string& symbol, std::span<const ExactScalar> args) const {
  auto it = functions_.find(symbol);
  if (it == functions_.end()) throw Error("symbol '" + symbol + "' has no ambient interpretation");
  if (it->second.arity != args.size()) throw Error("arity mismatch applying '" + symbol + "'");
  return it->second.fn(args);
}

}  // namespace fapprox
