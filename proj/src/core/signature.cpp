#include "fapprox/signature.hpp"

namespace fapprox {

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  std::set<std::string> seen;
  for (const auto& s : symbols_) {
    if (s.name.empty()) throw Error("symbol with empty name");
    if (!seen.insert(s.name).second) throw Error("duplicate symbol '" + s.name + "' in signature");
  }
}

Signature Signature::ring() { return Signature({{"+", 2}, {"*", 2}}); }

std::optional<std::size_t> Signature::find(const std::string& name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t Signature::index_of(const std::string& name) const {
  if (auto i = find(name)) return *i;
  throw Error("symbol '" + name + "' not in signature");
}

Term Term::var(std::string name) {
  Term t;
  t.kind = Kind::variable;
  t.name = std::move(name);
  return t;
}

Term Term::lit(Rational value) {
  Term t;
  t.kind = Kind::literal;
  t.value = std::move(value);
  return t;
}

Term Term::app(std::string symbol, std::vector<Term> args) {
  Term t;
  t.kind = Kind::application;
  t.name = std::move(symbol);
  t.args = std::move(args);
  return t;
}

std::set<std::string> Term::free_variables() const {
  std::set<std::string> out;
  if (kind == Kind::variable) {
    out.insert(name);
  } else {
    for (const auto& a : args) out.merge(a.free_variables());
  }
  return out;
}

void Term::check_against(const Signature& sig) const {
  if (kind != Kind::application) return;
  const Symbol& s = sig[sig.index_of(name)];
  if (s.arity != args.size()) {
    throw Error("symbol '" + name + "' has arity " + std::to_string(s.arity) + " but is applied to " +
                std::to_string(args.size()) + " arguments");
  }
  for (const auto& a : args) a.check_against(sig);
}

}  // namespace fapprox
