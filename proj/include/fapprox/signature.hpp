#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fapprox/rational.hpp"

namespace fapprox {

struct Symbol {
  std::string name;
  unsigned arity = 0;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// Finite list of function symbols with unique names.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<Symbol> symbols);

  /// The ring signature {+, *}.
  static Signature ring();

  const std::vector<Symbol>& symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  const Symbol& operator[](std::size_t i) const { return symbols_.at(i); }

  std::optional<std::size_t> find(const std::string& name) const;
  std::size_t index_of(const std::string& name) const;  // throws if absent

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<Symbol> symbols_;
};

/// Term over a signature: a variable, a numeric literal (a named ambient
/// constant), or an application of a symbol to subterms.
struct Term {
  enum class Kind { variable, literal, application };

  Kind kind = Kind::literal;
  std::string name;  // variable name or symbol name
  Rational value;    // literal value
  std::vector<Term> args;

  static Term var(std::string name);
  static Term lit(Rational value);
  static Term app(std::string symbol, std::vector<Term> args);

  friend Term operator+(Term a, Term b) { return app("+", {std::move(a), std::move(b)}); }
  friend Term operator*(Term a, Term b) { return app("*", {std::move(a), std::move(b)}); }

  std::set<std::string> free_variables() const;

  /// Throws if an application does not match the signature's arity.
  void check_against(const Signature& sig) const;

  friend bool operator==(const Term&, const Term&) = default;
};

}  // namespace fapprox
