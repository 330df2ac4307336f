#include <cctype>
#include <set>

#include "fapprox/pbf.hpp"

namespace fapprox {

ParseError::ParseError(std::size_t position, const std::string& message)
    : Error("column " + std::to_string(position + 1) + ": " + message), position_(position) {}

namespace {

enum class Tok { ident, number, punct, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

const std::set<std::string> kKeywords = {"forall", "exists", "in", "or", "and", "close", "pball"};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      auto digits = [&] {
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      };
      digits();
      if (i < s.size() && s[i] == '.') {
        ++i;
        digits();
      }
      if (i + 1 < s.size() && s[i] == '/' && std::isdigit(static_cast<unsigned char>(s[i + 1]))) {
        ++i;
        digits();
      }
      out.push_back({Tok::number, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (std::string_view("()[],:=+*|-").find(c) != std::string_view::npos) {
      out.push_back({Tok::punct, std::string(1, c), start});
      ++i;
      continue;
    }
    throw ParseError(start, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::end, "", s.size()});
  return out;
}

/// Boolean structure as written, before DNF normalization.
struct BoolNode {
  enum class Kind { atom, conj, disj } kind = Kind::atom;
  Atom atom;
  std::vector<BoolNode> children;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  ParseResult formula(const ParseOptions& options) {
    ParseResult result;
    bool any_quantifier = false;
    while (is_ident("forall") || is_ident("exists")) {
      any_quantifier = true;
      QuantifiedVar q;
      q.quantifier = peek().text == "forall" ? Quantifier::forall : Quantifier::exists;
      ++pos_;
      const std::size_t at = peek().pos;
      q.variable = identifier("variable name");
      for (const auto& prev : result.formula.prefix) {
        if (prev.variable == q.variable) throw ParseError(at, "variable '" + q.variable + "' is quantified twice");
      }
      if (is_ident("in")) {
        ++pos_;
        q.bound = region();
      }
      result.formula.prefix.push_back(std::move(q));
    }
    if (is_punct(":")) {
      ++pos_;
    } else if (any_quantifier) {
      fail("expected ':' after the quantifier prefix");
    }
    BoolNode tree = disjunction();
    if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "' after the formula");
    bool dnf = true;
    result.formula.matrix = to_dnf(tree, /*top=*/true, dnf);
    if (!dnf && !options.normalize_dnf) {
      throw ParseError(0, "matrix is not a disjunction of conjunctions (normalization disabled)");
    }
    result.normalized = !dnf;
    return result;
  }

  Region region_only() {
    Region r = region();
    if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "' after the region");
    return r;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  bool is_punct(const char* p) const { return peek().kind == Tok::punct && peek().text == p; }
  bool is_ident(const char* w) const { return peek().kind == Tok::ident && peek().text == w; }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(peek().pos, message); }

  void expect(const char* p) {
    if (!is_punct(p)) {
      fail(std::string("expected '") + p + "'" + (peek().kind == Tok::end ? " before end of input" : " but found '" + peek().text + "'"));
    }
    ++pos_;
  }

  std::string identifier(const char* what) {
    if (peek().kind != Tok::ident) fail(std::string("expected ") + what);
    if (kKeywords.count(peek().text)) fail("'" + peek().text + "' is a keyword, expected " + what);
    return toks_[pos_++].text;
  }

  Rational number() {
    bool negative = false;
    if (is_punct("-")) {
      negative = true;
      ++pos_;
    }
    if (peek().kind != Tok::number) fail("expected a number");
    Rational v;
    try {
      v = parse_rational(peek().text);
    } catch (const Error& e) {
      fail(e.what());
    }
    ++pos_;
    return negative ? Rational(-v) : v;
  }

  long integer() {
    const std::size_t at = peek().pos;
    Rational v = number();
    if (v.get_den() != 1 || !fits_int64(v.get_num())) throw ParseError(at, "expected an integer");
    return v.get_num().get_si();
  }

  Region region_part() {
    const std::size_t at = peek().pos;
    if (is_ident("pball")) {
      ++pos_;
      expect("(");
      const std::size_t p_at = peek().pos;
      long p = integer();
      expect(",");
      long m = integer();
      expect(")");
      if (p < 2 || !is_prime(static_cast<unsigned long>(p))) throw ParseError(p_at, "pball needs a prime");
      return PadicBall{static_cast<unsigned long>(p), m};
    }
    const bool open = is_punct("(");
    if (!open && !is_punct("[")) fail("expected a region: (lo, hi), [lo, hi] or pball(p, m)");
    ++pos_;
    Rational lo = number();
    expect(",");
    Rational hi = number();
    expect(open ? ")" : "]");
    if (!(lo < hi)) throw ParseError(at, "interval needs lo < hi");
    return Interval(lo, hi, open ? Openness::open : Openness::closed);
  }

  Region region() {
    const std::size_t at = peek().pos;
    Region first = region_part();
    if (!is_punct("|")) return first;
    if (first.is_padic()) fail("p-adic balls cannot be joined with '|'");
    std::vector<Interval> parts = first.intervals();
    while (is_punct("|")) {
      ++pos_;
      Region next = region_part();
      if (next.is_padic()) fail("p-adic balls cannot be joined with '|'");
      parts.push_back(next.intervals().front());
    }
    try {
      return Region::union_of(parts);
    } catch (const Error& e) {
      throw ParseError(at, e.what());
    }
  }

  Term term() {
    Term t = product();
    while (is_punct("+")) {
      ++pos_;
      t = Term::app("+", {std::move(t), product()});
    }
    return t;
  }

  Term product() {
    Term t = factor();
    while (is_punct("*")) {
      ++pos_;
      t = Term::app("*", {std::move(t), factor()});
    }
    return t;
  }

  Term factor() {
    if (peek().kind == Tok::number || (is_punct("-") && peek(1).kind == Tok::number)) return Term::lit(number());
    if (is_punct("(")) {
      ++pos_;
      Term t = term();
      expect(")");
      return t;
    }
    if (is_ident("forall") || is_ident("exists")) fail("quantifier inside the matrix: only prenex formulas are accepted");
    if (peek().kind == Tok::ident) {
      std::string name = identifier("a term");
      if (!is_punct("(")) return Term::var(std::move(name));
      ++pos_;
      std::vector<Term> args;
      args.push_back(term());
      while (is_punct(",")) {
        ++pos_;
        args.push_back(term());
      }
      expect(")");
      return Term::app(std::move(name), std::move(args));
    }
    fail(peek().kind == Tok::end ? "unexpected end of input, expected a term" : "expected a term but found '" + peek().text + "'");
  }

  Atom atom() {
    if (is_ident("close")) {
      ++pos_;
      expect("(");
      Term a = term();
      expect(",");
      Term b = term();
      expect(",");
      const std::size_t at = peek().pos;
      Rational eps = number();
      if (sgn(eps) <= 0) throw ParseError(at, "closeness threshold must be positive");
      expect(")");
      return Atom::close(std::move(a), std::move(b), std::move(eps));
    }
    Term a = term();
    expect("=");
    Term b = term();
    return Atom::eq(std::move(a), std::move(b));
  }

  BoolNode primary() {
    if (is_ident("forall") || is_ident("exists")) fail("quantifier inside the matrix: only prenex formulas are accepted");
    if (!is_punct("(")) return BoolNode{BoolNode::Kind::atom, atom(), {}};
    // "(" opens either a term or a grouped subformula; try the atom first.
    const std::size_t save = pos_;
    try {
      return BoolNode{BoolNode::Kind::atom, atom(), {}};
    } catch (const ParseError& atom_error) {
      const std::size_t atom_pos = atom_error.position();
      pos_ = save;
      try {
        ++pos_;
        BoolNode inner = disjunction();
        expect(")");
        return inner;
      } catch (const ParseError& group_error) {
        if (atom_pos > group_error.position()) throw atom_error;
        throw;
      }
    }
  }

  BoolNode conjunction() {
    BoolNode node{BoolNode::Kind::conj, {}, {}};
    node.children.push_back(primary());
    while (is_ident("and")) {
      ++pos_;
      node.children.push_back(primary());
    }
    return node;
  }

  BoolNode disjunction() {
    BoolNode node{BoolNode::Kind::disj, {}, {}};
    node.children.push_back(conjunction());
    while (is_ident("or")) {
      ++pos_;
      node.children.push_back(conjunction());
    }
    return node;
  }

  /// DNF of the tree; `dnf` is cleared when distribution was needed.
  static std::vector<Conjunction> to_dnf(const BoolNode& n, bool top, bool& dnf) {
    switch (n.kind) {
      case BoolNode::Kind::atom:
        return {{n.atom}};
      case BoolNode::Kind::disj: {
        std::vector<Conjunction> out;
        for (const auto& c : n.children) {
          auto part = to_dnf(c, top, dnf);
          out.insert(out.end(), part.begin(), part.end());
        }
        return out;
      }
      case BoolNode::Kind::conj: {
        std::vector<Conjunction> acc = {{}};
        for (const auto& c : n.children) {
          auto part = to_dnf(c, false, dnf);
          if (part.size() > 1 && (n.children.size() > 1 || !top)) dnf = false;
          std::vector<Conjunction> next;
          for (const auto& left : acc) {
            for (const auto& right : part) {
              Conjunction merged = left;
              merged.insert(merged.end(), right.begin(), right.end());
              next.push_back(std::move(merged));
            }
          }
          acc = std::move(next);
        }
        return acc;
      }
    }
    return {};
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

int precedence(const Term& t) {
  if (t.kind == Term::Kind::application && t.args.size() == 2 && t.name == "+") return 1;
  if (t.kind == Term::Kind::application && t.args.size() == 2 && t.name == "*") return 2;
  return 3;
}

std::string wrap(const Term& t, bool parens) {
  std::string s = format_term(t);
  return parens ? "(" + s + ")" : s;
}

}  // namespace

ParseResult parse_formula_ex(std::string_view text, const ParseOptions& options) {
  return Parser(text).formula(options);
}

Formula parse_formula(std::string_view text, const ParseOptions& options) {
  return parse_formula_ex(text, options).formula;
}

Region parse_region(std::string_view text) { return Parser(text).region_only(); }

std::string format_number(const Rational& q) { return to_decimal_string(q); }

std::string format_term(const Term& t) {
  switch (t.kind) {
    case Term::Kind::variable:
      return t.name;
    case Term::Kind::literal:
      return format_number(t.value);
    case Term::Kind::application:
      break;
  }
  const int p = precedence(t);
  if (p == 1) return wrap(t.args[0], precedence(t.args[0]) < 1) + " + " + wrap(t.args[1], precedence(t.args[1]) <= 1);
  if (p == 2) return wrap(t.args[0], precedence(t.args[0]) < 2) + "*" + wrap(t.args[1], precedence(t.args[1]) <= 2);
  std::string out = t.name + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ", ";
    out += format_term(t.args[i]);
  }
  return out + ")";
}

std::string format_region(const Region& r) {
  if (r.is_padic()) return "pball(" + std::to_string(r.ball().p) + ", " + std::to_string(r.ball().m) + ")";
  std::string out;
  for (const auto& part : r.intervals()) {
    if (!out.empty()) out += " | ";
    out += part.is_open() ? "(" : "[";
    out += format_number(part.lo) + ", " + format_number(part.hi);
    out += part.is_open() ? ")" : "]";
  }
  return out;
}

std::string format_formula(const Formula& f) {
  std::string out;
  for (const auto& q : f.prefix) {
    out += q.quantifier == Quantifier::forall ? "forall " : "exists ";
    out += q.variable;
    if (q.bound) out += " in " + format_region(*q.bound);
    out += " ";
  }
  if (!f.prefix.empty()) out += ": ";
  for (std::size_t i = 0; i < f.matrix.size(); ++i) {
    if (i) out += " or ";
    for (std::size_t j = 0; j < f.matrix[i].size(); ++j) {
      if (j) out += " and ";
      const Atom& a = f.matrix[i][j];
      if (a.kind == Atom::Kind::equality) {
        out += format_term(a.lhs) + " = " + format_term(a.rhs);
      } else {
        out += "close(" + format_term(a.lhs) + ", " + format_term(a.rhs) + ", " + format_number(a.epsilon) + ")";
      }
    }
  }
  return out;
}

}  // namespace fapprox
