#pragma once

#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>

#include "fapprox/rational.hpp"
#include "fapprox/region.hpp"
#include "fapprox/signature.hpp"

namespace fapprox {

enum class AmbientKind { none, real, padic };

/// Which topological field the embedded values live in, and its metric.
struct Ambient {
  AmbientKind kind = AmbientKind::none;
  unsigned long p = 0;  // prime for padic

  static Ambient real() { return {AmbientKind::real, 0}; }
  static Ambient padic(unsigned long prime);
  static Ambient none() { return {}; }

  bool matches(const Region& r) const;
  /// Distance rho(x, y): |x - y| or |x - y|_p.
  Rational distance(const Rational& x, const Rational& y) const;
  /// Real: |x - y| < eps. p-adic: |x - y|_p <= eps.
  bool close(const Rational& x, const Rational& y, const Entourage& w) const;
  bool close(const ExactScalar& x, const ExactScalar& y, const Entourage& w) const;

  std::string to_string() const;

  friend bool operator==(const Ambient&, const Ambient&) = default;
};

bool is_prime(unsigned long n);

/// An ambient field together with exact interpretations of signature symbols.
class AmbientStructure {
 public:
  using Function = std::function<ExactScalar(std::span<const ExactScalar>)>;

  explicit AmbientStructure(Ambient ambient) : ambient_(ambient) {}

  /// R with + and *.
  static AmbientStructure real_field();
  /// Q_p with + and * on finite expansions.
  static AmbientStructure padic_field(unsigned long p);

  AmbientStructure& define(const std::string& symbol, unsigned arity, Function f);

  const Ambient& ambient() const { return ambient_; }
  /// Interpreted symbols in definition order.
  Signature signature() const;
  bool interprets(const std::string& symbol) const { return functions_.count(symbol) != 0; }
  unsigned arity(const std::string& symbol) const;
  ExactScalar apply(const std::string& symbol, std::span<const ExactScalar> args) const;
  /// True when the symbol still carries the built-in exact + or * of the field.
  bool standard(const std::string& symbol) const { return builtin_.count(symbol) != 0; }

 private:
  struct Entry {
    unsigned arity;
    Function fn;
  };
  Ambient ambient_;
  std::map<std::string, Entry> functions_;
  std::set<std::string> builtin_;
  std::vector<std::string> order_;
};

}  // namespace fapprox
