#include "fapprox/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fapprox/algebra_io.hpp"
#include "fapprox/approximation.hpp"
#include "fapprox/laws.hpp"
#include "fapprox/padic_systems.hpp"
#include "fapprox/pbf.hpp"
#include "fapprox/real_systems.hpp"
#include "fapprox/repro.hpp"
#include "fapprox/ring_probe.hpp"
#include "json.hpp"

namespace fapprox::cli {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Global {
  std::string format = "table";
  std::uint64_t seed = 1;

  bool as_json() const { return format == "json"; }
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

Rational number(const std::string& text, const std::string& what) {
  try {
    return parse_rational(trim(text));
  } catch (const Error& e) {
    throw UsageError(what + ": " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string short_decimal(const Rational& q) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.7f", q.get_d());
  return buf;
}

std::string scalar_text(const ExactScalar& x) {
  if (x.exact()) return to_decimal_string(x.value);
  return to_decimal_string(x.value) + " +- " + to_decimal_string(x.radius);
}

/// "a:eps" ladder cells.
std::pair<Rational, Rational> cell_of(const std::string& text) {
  auto parts = split(text, ':');
  if (parts.size() != 2) throw UsageError("ladder cell '" + text + "' is not of the form a:eps");
  return {number(parts[0], "ladder a"), number(parts[1], "ladder eps")};
}

// ---- algebra builders ----

struct BuilderOptions {
  std::string builder;
  unsigned long p = 2;
  unsigned n = 1;
  unsigned m = 0;
  long P = 1;
  unsigned Q = 1;
  long M = 1;
  std::string eps;
  std::string step;
  std::string file;
  std::string interval;
  std::string region;
  long ball = 0;
  CLI::Option* ball_option = nullptr;

  void add(CLI::App* app, bool with_region) {
    app->add_option("--builder", builder, "kn, hmn, apq, modular, canonical or file")
        ->required()
        ->check(CLI::IsMember({"kn", "hmn", "apq", "modular", "canonical", "file"}));
    app->add_option("--p", p, "prime for kn and hmn");
    app->add_option("--n", n, "p-adic precision digits");
    app->add_option("--m", m, "p-adic exponent range of hmn");
    app->add_option("--P", P, "exponent bound of apq");
    app->add_option("--Q", Q, "mantissa digits of apq");
    app->add_option("--M", M, "modular half-width");
    app->add_option("--eps", eps, "grid spacing (modular, canonical) and entourage");
    app->add_option("--step", step, "canonical grid step (defaults to eps)");
    app->add_option("--file", file, "algebra JSON file");
    if (with_region) {
      app->add_option("--interval", interval, "closed real interval lo,hi");
      app->add_option("--region", region, "region in formula syntax");
      ball_option = app->add_option("--ball", ball, "p-adic ball p^-m Z_p, given m");
    }
  }

  std::optional<Region> parsed_region() const {
    int given = static_cast<int>(!interval.empty()) + static_cast<int>(!region.empty()) +
                static_cast<int>(ball_option != nullptr && ball_option->count() > 0);
    if (given > 1) throw UsageError("give only one of --interval, --region, --ball");
    if (!interval.empty()) {
      auto parts = split(interval, ',');
      if (parts.size() != 2) throw UsageError("--interval expects lo,hi");
      Rational lo = number(parts[0], "--interval");
      Rational hi = number(parts[1], "--interval");
      if (lo >= hi) throw UsageError("--interval needs lo < hi");
      return Region::closed(lo, hi);
    }
    if (!region.empty()) {
      try {
        return parse_region(region);
      } catch (const ParseError& e) {
        throw UsageError("--region: " + std::string(e.what()));
      }
    }
    if (ball_option != nullptr && ball_option->count() > 0) return Region(PadicBall{p, ball});
    return std::nullopt;
  }

  std::string describe() const {
    if (builder == "kn") return "K_" + std::to_string(n) + " (p=" + std::to_string(p) + ")";
    if (builder == "hmn") return "H_{" + std::to_string(m) + "," + std::to_string(n) + "} (p=" + std::to_string(p) + ")";
    if (builder == "apq") return "A_PQ (P=" + std::to_string(P) + ", Q=" + std::to_string(Q) + ")";
    if (builder == "modular") return "A'_{M,eps} (M=" + std::to_string(M) + ", eps=" + eps + ")";
    if (builder == "canonical") return "canonical grid (step=" + (step.empty() ? eps : step) + ")";
    return "file " + file;
  }

  FiniteAlgebra build() const {
    if (builder == "kn") return build_Kn(p, n);
    if (builder == "hmn") return build_Hmn(HmnParams{p, m, n});
    if (builder == "apq") return build_APQ(FPParams{P, Q});
    if (builder == "modular") {
      if (eps.empty()) throw UsageError("modular needs --eps");
      return build_modular(ModularParams{M, number(eps, "--eps")});
    }
    if (builder == "canonical") {
      if (eps.empty()) throw UsageError("canonical needs --eps");
      auto c = parsed_region();
      if (!c) throw UsageError("canonical needs a region");
      Rational w = number(eps, "--eps");
      Rational s = step.empty() ? w : number(step, "--step");
      AmbientStructure structure =
          c->is_real() ? AmbientStructure::real_field() : AmbientStructure::padic_field(c->ball().p);
      return canonical_approximation(structure, *c, Entourage(w), s);
    }
    if (file.empty()) throw UsageError("file builder needs --file");
    return load_algebra(file);
  }
};

/// Carrier id whose embedded value equals `text`, or the id itself when the
/// algebra carries no embedding.
ElementId element_of(const FiniteAlgebra& alg, const std::string& text) {
  Rational v = number(text, "element");
  if (!alg.embedded()) {
    if (v.get_den() != 1 || sgn(v) < 0 || v >= Rational(static_cast<unsigned long>(alg.size()))) {
      throw UsageError("element id " + text + " out of range");
    }
    return static_cast<ElementId>(v.get_num().get_ui());
  }
  for (ElementId id = 0; id < alg.size(); ++id) {
    if (alg.embed(id) == v) return id;
  }
  throw UsageError("no carrier element has value " + text);
}

// ---- check ----

int cmd_check(const Global& g, const BuilderOptions& b, const std::string& w_text, std::ostream& out) {
  auto c = b.parsed_region();
  if (!c) throw UsageError("check needs --interval, --region or --ball");
  std::string w_src = w_text.empty() ? b.eps : w_text;
  if (w_src.empty()) throw UsageError("check needs --eps (or --w)");
  const Rational w = number(w_src, "--eps");
  FiniteAlgebra alg = b.build();
  ApproximationReport r = check_approximation(alg, *c, Entourage(w));

  if (g.as_json()) {
    json j;
    j["algebra"] = b.describe();
    j["carrier_size"] = alg.size();
    j["region"] = format_region(*c);
    j["epsilon"] = format_number(w);
    j["grid_ok"] = r.grid_ok;
    if (r.grid_witness) j["grid_witness"] = format_number(*r.grid_witness);
    j["hom_ok"] = r.hom_ok;
    j["violation_count"] = r.violation_count;
    j["violations"] = json::array();
    for (const auto& v : r.hom_violations) {
      json e;
      e["symbol"] = v.symbol;
      e["inputs"] = json::array();
      for (auto id : v.inputs) e["inputs"].push_back(alg.label(id));
      e["exact"] = scalar_text(v.exact_result);
      e["table"] = alg.label(v.table_result);
      e["distance"] = format_number(v.distance);
      j["violations"].push_back(e);
    }
    j["verdict"] = r.ok() ? "approximation" : "not an approximation";
    out << j.dump(1) << "\n";
  } else {
    out << "algebra: " << b.describe() << ", " << alg.size() << " elements\n";
    out << "C = " << format_region(*c) << ", W = " << format_number(w) << "\n";
    out << "grid: " << (r.grid_ok ? "ok" : "FAIL");
    if (r.grid_witness) out << " (" << format_number(*r.grid_witness) << " is not W-close to any element)";
    out << "\n";
    out << "homomorphism: " << (r.hom_ok ? "ok" : "FAIL, " + std::to_string(r.violation_count) + " violations") << "\n";
    for (std::size_t i = 0; i < r.hom_violations.size() && i < 20; ++i) {
      const auto& v = r.hom_violations[i];
      out << "  " << v.symbol << "(";
      for (std::size_t k = 0; k < v.inputs.size(); ++k) out << (k ? ", " : "") << alg.label(v.inputs[k]);
      out << "): exact " << scalar_text(v.exact_result) << ", table " << alg.label(v.table_result) << ", distance "
          << format_number(v.distance) << "\n";
    }
    if (r.hom_violations.size() > 20) out << "  ...\n";
    out << (r.ok() ? "verdict: (C, W)-approximation\n" : "verdict: not a (C, W)-approximation\n");
  }
  return r.ok() ? verified : refuted;
}

// ---- laws ----

Law law_of(const std::string& name, ElementId element) {
  auto dash = name.rfind('-');
  std::string kind = dash == std::string::npos ? name : name.substr(0, dash);
  std::string op_name = dash == std::string::npos ? "" : name.substr(dash + 1);
  if (name == "distrib") return Law::distrib("*", "+");
  std::string op = op_name == "add" ? "+" : op_name == "mul" ? "*" : "";
  if (op.empty()) throw UsageError("unknown law '" + name + "'");
  if (kind == "assoc") return Law::assoc(op);
  if (kind == "comm") return Law::comm(op);
  if (kind == "cancel") return Law::cancel(op);
  if (kind == "identity") return Law::identity(op, element);
  if (kind == "inverse") return Law::inverse(op, element);
  throw UsageError("unknown law '" + name + "'");
}

int cmd_laws(const Global& g, const BuilderOptions& b, const std::string& law_name, const std::string& element,
             const std::string& pin, const std::string& restrict, std::ostream& out) {
  FiniteAlgebra alg = b.build();
  const std::string default_element = "0";
  ElementId e = 0;
  const bool needs_element = law_name.rfind("identity", 0) == 0 || law_name.rfind("inverse", 0) == 0;
  if (needs_element) {
    e = element_of(alg, element.empty() ? default_element : element);
  } else if (!element.empty()) {
    throw UsageError("--element applies to identity and inverse laws only");
  }
  Law law = law_of(law_name, e);

  LawSearchOptions opts;
  if (!restrict.empty()) {
    try {
      opts.restrict = parse_region(restrict);
    } catch (const ParseError& err) {
      throw UsageError("--restrict: " + std::string(err.what()));
    }
  }
  if (!pin.empty()) {
    auto slots = split(pin, ',');
    if (slots.size() > law.width()) throw UsageError("--pin has more slots than the law has variables");
    for (const auto& s : slots) {
      std::string t = trim(s);
      if (t == "*" || t.empty()) {
        opts.pins.emplace_back(std::nullopt);
      } else {
        opts.pins.emplace_back(std::vector<ElementId>{element_of(alg, t)});
      }
    }
  }
  auto w = law_search(alg, law, opts);

  if (g.as_json()) {
    json j;
    j["algebra"] = b.describe();
    j["law"] = law.describe();
    j["holds"] = !w.has_value();
    if (w) {
      j["witness"] = json::array();
      for (auto id : w->tuple) j["witness"].push_back(alg.label(id));
      j["lhs"] = alg.label(w->lhs);
      if (law.kind != LawKind::inverse) j["rhs"] = alg.label(w->rhs);
      if (!w->note.empty()) j["note"] = w->note;
    } else {
      j["scope"] = opts.restrict || !opts.pins.empty() ? "restricted scan" : "exhaustive";
    }
    out << j.dump(1) << "\n";
  } else {
    out << "algebra: " << b.describe() << ", " << alg.size() << " elements\n";
    out << "law: " << law.describe() << "\n";
    if (w) {
      out << "counterexample: (";
      for (std::size_t k = 0; k < w->tuple.size(); ++k) out << (k ? ", " : "") << alg.label(w->tuple[k]);
      out << ")\n";
      if (law.kind == LawKind::inverse) {
        out << "  " << w->note << "\n";
      } else {
        out << "  sides: " << alg.label(w->lhs) << " vs " << alg.label(w->rhs);
        if (!w->note.empty()) out << " (" << w->note << ")";
        out << "\n";
      }
    } else {
      out << "holds (" << (opts.restrict || !opts.pins.empty() ? "restricted scan" : "exhaustive") << ")\n";
    }
  }
  return w ? refuted : verified;
}

// ---- eval ----

Formula load_formula(const std::string& file, const std::string& expr) {
  if (file.empty() == expr.empty()) throw UsageError("give exactly one of --formula and --expr");
  std::string text = expr.empty() ? read_file(file) : expr;
  try {
    return parse_formula(text);
  } catch (const ParseError& e) {
    std::string line = text;
    line.erase(std::remove(line.begin(), line.end(), '\n'), line.end());
    throw UsageError(std::string("formula: ") + e.what() + "\n  " + line + "\n  " + std::string(e.position(), ' ') + "^");
  }
}

int eval_inverse_square_gap(const Global& g, const Rational& c, const Rational& alpha, const Rational& a, const Rational& eps,
                  std::ostream& out) {
  if (sgn(alpha) <= 0 || alpha >= 1) throw UsageError("--alpha must lie in (0, 1)");
  std::ostringstream text;
  text << "exists z in [" << format_number(-c) << ", " << format_number(c) << "] : (y + -1*x)*z*z = 1";
  Formula f = approximate(parse_formula(text.str()), alpha);
  FiniteAlgebra alg =
      canonical_approximation(AmbientStructure::real_field(), Region::closed(-a, a), Entourage(eps), eps);
  const Rational gap = (1 - alpha) / (c * c);
  std::size_t disagreements = 0;
  json rows = json::array();
  std::vector<std::vector<std::string>> table;
  for (const Rational& xi : {Rational(-1, 2), Rational(0), Rational(1, 2)}) {
    for (long k = -4; k <= 12; ++k) {
      const Rational eta = xi + gap + Rational(k, 32);
      const ElementId x = nearest_element(alg, xi);
      const ElementId y = nearest_element(alg, eta);
      const Rational jx = alg.embed(x);
      const Rational jy = alg.embed(y);
      const bool finite = eval_finite(f, alg, {{"x", x}, {"y", y}}).value;
      const bool closed = jy > jx + gap;
      const bool band = abs(jy - jx - gap) < eps;
      std::string status = finite == closed ? "agree" : band ? "band" : "DISAGREE";
      if (status == "DISAGREE") ++disagreements;
      rows.push_back({{"xi", format_number(jx)}, {"eta", format_number(jy)}, {"finite", finite}, {"closed_form", closed},
                      {"status", status}});
      table.push_back({format_number(jx), format_number(jy), finite ? "true" : "false", closed ? "true" : "false", status});
    }
  }
  if (g.as_json()) {
    json j;
    j["formula"] = format_formula(f);
    j["a"] = format_number(a);
    j["eps"] = format_number(eps);
    j["closed_form"] = "eta > xi + " + format_number(gap);
    j["rows"] = rows;
    j["disagreements"] = disagreements;
    out << j.dump(1) << "\n";
  } else {
    out << "formula: " << format_formula(f) << "\n";
    out << "canonical (a, eps) = (" << format_number(a) << ", " << format_number(eps) << "); closed form: eta > xi + "
        << format_number(gap) << "\n";
    out << "xi        eta          finite  closed  status\n";
    for (const auto& r : table) {
      out << r[0] << std::string(r[0].size() < 10 ? 10 - r[0].size() : 1, ' ') << r[1]
          << std::string(r[1].size() < 13 ? 13 - r[1].size() : 1, ' ') << r[2] << std::string(8 - r[2].size(), ' ')
          << r[3] << std::string(8 - r[3].size(), ' ') << r[4] << "\n";
    }
    out << "disagreements outside the boundary band: " << disagreements << "\n";
  }
  return disagreements == 0 ? verified : refuted;
}

int cmd_eval(const Global& g, const BuilderOptions& b, const std::string& file, const std::string& expr,
             const std::vector<std::string>& assigns, const std::string& approx, bool trace, std::ostream& out) {
  Formula f = load_formula(file, expr);
  if (!approx.empty()) f = approximate(f, number(approx, "--approx"));
  FiniteAlgebra alg = b.build();
  Assignment env;
  for (const auto& a : assigns) {
    auto eq = a.find('=');
    if (eq == std::string::npos) throw UsageError("--assign expects name=value");
    env[trim(a.substr(0, eq))] = nearest_element(alg, number(a.substr(eq + 1), "--assign"));
  }
  EvalResult r = eval_finite(f, alg, env);
  if (g.as_json()) {
    json j;
    j["formula"] = format_formula(f);
    j["algebra"] = b.describe();
    j["value"] = r.value;
    j["matrix_evaluations"] = r.matrix_evaluations;
    if (trace) {
      j["trace"] = json::array();
      for (const auto& s : r.trace) {
        j["trace"].push_back({{"quantifier", s.quantifier == Quantifier::forall ? "forall" : "exists"},
                              {"variable", s.variable},
                              {"element", s.label}});
      }
    }
    out << j.dump(1) << "\n";
  } else {
    out << "formula: " << format_formula(f) << "\n";
    out << "algebra: " << b.describe() << ", " << alg.size() << " elements\n";
    out << "value: " << (r.value ? "true" : "false") << "\n";
    if (trace) {
      for (const auto& s : r.trace) {
        out << "  " << (s.quantifier == Quantifier::forall ? "counterexample " : "witness ") << s.variable << " = "
            << s.label << "\n";
      }
    }
  }
  return r.value ? verified : refuted;
}

// ---- sweep ----

std::vector<Builder> builders_of(const std::string& names, std::uint64_t seed) {
  std::vector<Builder> out;
  for (const auto& raw : split(names, ',')) {
    std::string n = trim(raw);
    if (n == "canonical") {
      out.push_back(canonical_builder());
    } else if (n == "apq") {
      out.push_back(apq_builder());
    } else if (n == "modular") {
      out.push_back(modular_builder());
    } else if (n == "perturbed") {
      out.push_back(perturbed_builder(seed));
    } else {
      throw UsageError("unknown builder '" + n + "' (canonical, apq, modular, perturbed)");
    }
  }
  if (out.empty()) throw UsageError("no builders");
  return out;
}

struct SweepOptions {
  std::string preset;
  std::string b = "2", delta = "1/10", c = "3/2", d = "7/4";
  std::string file, expr;
  std::string c_prime;
  std::string margin;
  std::string w_prime;
  std::vector<std::string> ladder;
  std::vector<std::string> points;
  std::string builders = "canonical,apq,modular,perturbed";
  bool verify = false;
};

int cmd_sweep(const Global& g, const SweepOptions& o, std::ostream& out) {
  SweepConfig cfg;
  std::optional<SufficientParams> sufficient;
  if (o.preset == "reciprocal") {
    const Rational b = number(o.b, "--b");
    const Rational delta = number(o.delta, "--delta");
    const Rational c = number(o.c, "--c");
    const Rational d = number(o.d, "--d");
    if (!(1 < c && c < d && d < b)) throw UsageError("reciprocal needs 1 < c < d < b");
    if (sgn(delta) <= 0) throw UsageError("--delta must be positive");
    auto ring = [](const Rational& r, bool open) {
      const Openness k = open ? Openness::open : Openness::closed;
      return Region::union_of({Interval(-r, -1 / r, k), Interval(1 / r, r, k)});
    };
    cfg.formula = parse_formula("forall x in " + format_region(ring(d, true)) + " exists y in " +
                                format_region(ring(d, false)) + " : x*y = 1");
    cfg.c = bounds_of(cfg.formula);
    cfg.c_prime = {ring(c, true), ring(b, false)};
    cfg.w_prime = delta;
    sufficient = sufficient_params_inverse(b, delta);
    if (o.ladder.empty()) {
      const char* cells[] = {"1:1/4", "3/2:1/8", "2:1/16", "5/2:1/64", "3:1/128", "4:1/256"};
      for (const char* text : cells) {
        auto [a, e] = cell_of(text);
        cfg.ladder.push_back({a, e});
      }
    }
  } else if (!o.preset.empty()) {
    throw UsageError("unknown preset '" + o.preset + "' (reciprocal)");
  } else {
    cfg.formula = load_formula(o.file, o.expr);
    cfg.c = bounds_of(cfg.formula);
    if (!o.c_prime.empty() && !o.margin.empty()) throw UsageError("give --c-prime or --margin, not both");
    if (!o.c_prime.empty()) {
      for (const auto& r : split(o.c_prime, ';')) cfg.c_prime.push_back(parse_region(trim(r)));
    } else {
      if (o.margin.empty()) throw UsageError("sweep needs --c-prime regions or a --margin");
      cfg.c_prime = widen(cfg.formula, cfg.c, number(o.margin, "--margin"));
    }
    if (o.w_prime.empty()) throw UsageError("sweep needs --w-prime");
    cfg.w_prime = number(o.w_prime, "--w-prime");
    for (const auto& p : o.points) cfg.points.push_back(number(p, "--point"));
  }
  for (const auto& l : o.ladder) {
    auto [a, e] = cell_of(l);
    cfg.ladder.push_back({a, e});
  }
  if (cfg.ladder.empty()) throw UsageError("sweep needs --ladder cells");
  cfg.builders = builders_of(o.builders, g.seed);
  cfg.verify_cells = o.verify;
  SweepReport r = sweep(cfg);

  // Past the sufficient (a0, eps0), every cell beyond (a0, eps0) must be true.
  bool beyond_ok = true;
  if (sufficient) {
    for (const auto& cell : r.cells) {
      if (cell.cell.a > sufficient->a0_upper && cell.cell.epsilon < sufficient->eps0_lower) {
        beyond_ok = beyond_ok && cell.verdict;
      }
    }
  }
  if (g.as_json()) {
    json j = json::parse(r.to_json());
    if (sufficient) {
      j["a0"] = scalar_text(sufficient->a0);
      j["eps0"] = scalar_text(sufficient->eps0);
      j["beyond_a0_eps0_true"] = beyond_ok;
    }
    out << j.dump(1) << "\n";
  } else {
    out << r.to_table();
    if (sufficient) {
      out << "a0 = " << short_decimal(sufficient->a0.value) << ", eps0 = " << short_decimal(sufficient->eps0.value)
          << "; cells with a > a0 and eps < eps0 all true: " << (beyond_ok ? "yes" : "no") << "\n";
    }
  }
  return r.threshold_cell && beyond_ok ? verified : refuted;
}

// ---- probe ----

RingSpec ring_spec(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("ring spec '" + text + "' needs family:parameters");
  const std::string fam = text.substr(0, colon);
  const std::string arg = text.substr(colon + 1);
  auto whole = [&](const std::string& s) {
    Rational v = number(s, "ring parameter");
    if (v.get_den() != 1 || sgn(v) <= 0) throw UsageError("ring parameter must be a positive integer");
    return v.get_num().get_ui();
  };
  if (fam == "zn") return RingSpec::zn(whole(arg));
  if (fam == "product") {
    std::vector<unsigned long> f;
    for (const auto& s : split(arg, 'x')) f.push_back(whole(s));
    return RingSpec::product(f);
  }
  if (fam == "gf") {
    auto parts = split(arg, '^');
    if (parts.size() != 2) throw UsageError("gf spec is gf:p^k");
    return RingSpec::galois(whole(parts[0]), static_cast<unsigned>(whole(parts[1])));
  }
  if (fam == "ut") return RingSpec::upper_triangular(whole(arg));
  throw UsageError("unknown ring family '" + fam + "' (zn, product, gf, ut)");
}

struct ProbeOptions {
  std::vector<std::string> ladder;
  unsigned extra = 4;
  std::vector<std::string> rings;
  std::string objective = "combined";
  std::uint64_t iterations = 5000;
  unsigned restarts = 6;
  bool no_control = false;
  std::string ring;
  std::string dump;
};

ProbeObjective objective_of(const std::string& s) {
  if (s == "combined") return ProbeObjective::combined;
  if (s == "additive") return ProbeObjective::additive;
  if (s == "multiplicative") return ProbeObjective::multiplicative;
  throw UsageError("unknown objective '" + s + "'");
}

int cmd_probe(const Global& g, const ProbeOptions& o, std::ostream& out) {
  EmbeddingSearchConfig cfg;
  cfg.iterations = o.iterations;
  cfg.restarts = o.restarts;
  cfg.seed = g.seed;
  cfg.objective = objective_of(o.objective);
  std::vector<ProbeCell> ladder;
  for (const auto& l : o.ladder) {
    auto [a, e] = cell_of(l);
    ladder.push_back({a, e});
  }
  if (ladder.empty()) ladder = {{2, Rational(1, 2)}, {2, Rational(1, 4)}, {2, Rational(1, 8)}};

  if (!o.ring.empty()) {
    if (ladder.size() != 1) throw UsageError("--ring probes a single --ladder cell");
    Ring ring = build_ring(ring_spec(o.ring));
    cfg.a = ladder[0].a;
    cfg.epsilon = ladder[0].epsilon;
    EmbeddingResult r = best_embedding_error(ring.algebra, cfg);
    if (!o.dump.empty()) save_algebra(r.embedded(ring.algebra, cfg.epsilon), o.dump);
    const Rational e = r.error.get(cfg.objective);
    if (g.as_json()) {
      json j;
      j["ring"] = ring.name;
      j["a"] = format_number(cfg.a);
      j["eps"] = format_number(cfg.epsilon);
      j["objective"] = o.objective;
      j["additive"] = format_number(r.error.additive);
      j["multiplicative"] = format_number(r.error.multiplicative);
      j["grid_index"] = r.grid_index;
      j["evidence"] = "empirical";
      out << j.dump(1) << "\n";
    } else {
      out << "ring: " << ring.name << ", a = " << format_number(cfg.a) << ", eps = " << format_number(cfg.epsilon) << "\n";
      out << "best normalized error found: add " << format_number(r.error.additive) << ", mul "
          << format_number(r.error.multiplicative) << " (" << o.objective << " objective)\n";
    }
    return e > 1 ? verified : refuted;
  }

  std::vector<ProbeFamily> families;
  if (o.rings.empty()) {
    families.push_back(zn_family(o.extra));
  } else {
    std::vector<RingSpec> specs;
    for (const auto& s : o.rings) specs.push_back(ring_spec(s));
    families.push_back(fixed_family("rings", specs));
  }
  ProbeReport r = probe_report(families, ladder, cfg, !o.no_control);
  bool consistent = true;
  for (const auto& e : r.entries) {
    if (!e.feasible) continue;
    const Rational v = e.error.get(cfg.objective);
    consistent = consistent && (e.control ? v <= 1 : v > 1);
  }
  out << (g.as_json() ? r.to_json() + "\n" : r.to_table());
  return consistent ? verified : refuted;
}

// ---- repro ----

int cmd_linsys(const Global& g, const std::vector<unsigned>& qs, long P, unsigned working, std::ostream& out) {
  LinsysConfig cfg;
  if (!qs.empty()) cfg.Q = qs;
  cfg.P = P;
  cfg.working_digits = working;
  for (unsigned q : cfg.Q) {
    if (q < 5) throw UsageError("Q values must be at least 5");
  }
  LinsysReport r = repro_linsys(cfg);
  bool ok = true;
  for (const auto& l : r.levels) ok = ok && !l.singular && l.residual_bound <= pow_int(10, 1 - static_cast<long>(l.Q));
  for (const auto& d : r.distances) ok = ok && d.value > 1;
  if (g.as_json()) {
    json j = json::parse(r.to_json());
    j["reproduced"] = ok;
    out << j.dump(1) << "\n";
  } else {
    out << r.to_table();
    out << "residual <= 10^(1-Q) at every level and solutions more than 1 apart: " << (ok ? "yes" : "no") << "\n";
  }
  return ok ? verified : refuted;
}

struct PolyOptions {
  std::string g = "sin";
  std::string coefficients;
  std::string d, d_inner, delta, delta_inner;
  std::vector<std::string> ladder;
  std::size_t xi_samples = 200;
  std::size_t coefficient_samples = 6;
};

int cmd_poly(const Global& gl, const PolyOptions& o, std::ostream& out) {
  PolyConfig cfg = PolyConfig::defaults(UnaryFunction::parse(o.g));
  if (!o.coefficients.empty()) {
    cfg.coefficients.clear();
    for (const auto& s : split(o.coefficients, ',')) cfg.coefficients.push_back(number(s, "--coef"));
  }
  if (!o.d.empty()) cfg.d = number(o.d, "--d");
  if (!o.d_inner.empty()) cfg.d_inner = number(o.d_inner, "--d-inner");
  if (!o.delta.empty()) {
    cfg.delta = number(o.delta, "--delta");
    cfg.delta_inner = 2 * cfg.delta;
  }
  if (!o.delta_inner.empty()) cfg.delta_inner = number(o.delta_inner, "--delta-inner");
  if (!o.ladder.empty()) {
    cfg.ladder.clear();
    for (const auto& l : o.ladder) {
      auto [a, e] = cell_of(l);
      cfg.ladder.push_back({a, e});
    }
  }
  cfg.xi_samples = o.xi_samples;
  cfg.coefficient_samples = o.coefficient_samples;
  cfg.seed = gl.seed;
  if (cfg.delta_inner <= cfg.delta) throw UsageError("delta' must exceed delta");
  PolyReport r = repro_poly(cfg);
  out << (gl.as_json() ? r.to_json() + "\n" : r.to_table());
  return r.threshold_cell ? verified : refuted;
}

// ---- export ----

int cmd_export(const BuilderOptions& b, const std::string& path, std::ostream& out) {
  FiniteAlgebra alg = b.build();
  if (path.empty()) {
    out << algebra_to_json(alg) << "\n";
  } else {
    save_algebra(alg, path);
  }
  return verified;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite approximations of the real and p-adic fields", "fapprox"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--format", g.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--seed", g.seed, "random seed");

  // check
  auto* check = app.add_subcommand("check", "verify a (C, W)-approximation");
  BuilderOptions check_b;
  std::string check_w;
  check_b.add(check, true);
  check->add_option("--w", check_w, "entourage eps when it differs from the builder's --eps");

  // laws
  auto* laws = app.add_subcommand("laws", "search for a law counterexample");
  BuilderOptions laws_b;
  std::string law_name, law_element, law_pin, law_restrict;
  laws_b.add(laws, false);
  laws->add_option("--law", law_name, "assoc-add, comm-mul, cancel-add, distrib, identity-add, inverse-add, ...")
      ->required();
  laws->add_option("--element", law_element, "neutral element for identity and inverse laws");
  laws->add_option("--pin", law_pin, "per-slot values, e.g. 0.6006,0.6006,*");
  laws->add_option("--restrict", law_restrict, "only elements embedded in this region");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a bounded formula on a finite algebra");
  BuilderOptions eval_b;
  std::string eval_file, eval_expr, eval_approx, eval_preset;
  std::vector<std::string> eval_assign;
  bool eval_trace = false;
  std::string gap_c = "2", gap_alpha = "1/2", gap_a = "4", gap_eps = "1/256";
  eval->add_option("--builder", eval_b.builder, "kn, hmn, apq, modular, canonical or file")
      ->check(CLI::IsMember({"kn", "hmn", "apq", "modular", "canonical", "file"}));
  eval->add_option("--p", eval_b.p);
  eval->add_option("--n", eval_b.n);
  eval->add_option("--m", eval_b.m);
  eval->add_option("--P", eval_b.P);
  eval->add_option("--Q", eval_b.Q);
  eval->add_option("--M", eval_b.M);
  eval->add_option("--eps", eval_b.eps);
  eval->add_option("--step", eval_b.step);
  eval->add_option("--file", eval_b.file);
  eval->add_option("--interval", eval_b.interval);
  eval->add_option("--region", eval_b.region);
  eval->add_option("--formula", eval_file, "formula file");
  eval->add_option("--expr", eval_expr, "formula text");
  eval->add_option("--assign", eval_assign, "free variable name=value (nearest element)");
  eval->add_option("--approx", eval_approx, "evaluate phi[W] with this eps");
  eval->add_flag("--trace", eval_trace, "print witnesses and counterexamples");
  eval->add_option("--preset", eval_preset, "inverse-square-gap")->check(CLI::IsMember({"inverse-square-gap"}));
  eval->add_option("--c", gap_c, "inverse-square-gap: bound of z");
  eval->add_option("--alpha", gap_alpha, "inverse-square-gap: closeness threshold");
  eval->add_option("--a", gap_a, "inverse-square-gap: grid half-width");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "evaluate phi[c'][W'] over a ladder of approximations");
  SweepOptions so;
  sweep_cmd->add_option("--preset", so.preset, "reciprocal");
  sweep_cmd->add_option("--b", so.b, "reciprocal: outer radius of the exists bound");
  sweep_cmd->add_option("--delta", so.delta, "reciprocal: closeness threshold");
  sweep_cmd->add_option("--c", so.c, "reciprocal: radius of the forall bound");
  sweep_cmd->add_option("--d", so.d, "reciprocal: radius of the exact formula's bounds");
  sweep_cmd->add_option("--formula", so.file);
  sweep_cmd->add_option("--expr", so.expr);
  sweep_cmd->add_option("--c-prime", so.c_prime, "widened bounds per prefix variable, separated by ;");
  sweep_cmd->add_option("--margin", so.margin, "widen the formula's bounds by this margin");
  sweep_cmd->add_option("--w-prime", so.w_prime);
  sweep_cmd->add_option("--ladder", so.ladder, "cells a:eps, coarse to fine");
  sweep_cmd->add_option("--point", so.points, "ambient value per free variable");
  sweep_cmd->add_option("--builders", so.builders, "comma list of canonical, apq, modular, perturbed");
  sweep_cmd->add_flag("--verify", so.verify, "re-check each cell's algebra");

  // probe
  auto* probe = app.add_subcommand("probe", "search for ring embeddings on a grid");
  ProbeOptions po;
  probe->add_option("--ladder", po.ladder, "cells a:eps");
  probe->add_option("--extra", po.extra, "Z/N beyond the grid size");
  probe->add_option("--rings", po.rings, "explicit rings: zn:N, product:2x3, gf:p^k, ut:p");
  probe->add_option("--objective", po.objective)->check(CLI::IsMember({"combined", "additive", "multiplicative"}));
  probe->add_option("--iterations", po.iterations);
  probe->add_option("--restarts", po.restarts);
  probe->add_flag("--no-control", po.no_control);
  probe->add_option("--ring", po.ring, "probe one ring at one cell");
  probe->add_option("--dump", po.dump, "with --ring: write the embedded ring as an algebra file");

  // repro
  auto* repro = app.add_subcommand("repro", "linear-system and polynomial experiments");
  repro->require_subcommand(1);
  auto* linsys = repro->add_subcommand("linsys", "the 2x2 system with truncated cube roots");
  std::vector<unsigned> qs;
  long lin_P = 0;
  unsigned lin_working = 0;
  linsys->add_option("--Q", qs, "digit counts")->delimiter(',');
  linsys->add_option("--P", lin_P, "working exponent bound");
  linsys->add_option("--working-digits", lin_working);
  auto* poly = repro->add_subcommand("poly", "polynomial approximation over approximations of R");
  PolyOptions pl;
  poly->add_option("--g", pl.g)->check(CLI::IsMember({"sin", "square", "reciprocal-shifted"}));
  poly->add_option("--coef", pl.coefficients, "b0,b1,...,bn");
  poly->add_option("--d", pl.d);
  poly->add_option("--d-inner", pl.d_inner);
  poly->add_option("--delta", pl.delta);
  poly->add_option("--delta-inner", pl.delta_inner);
  poly->add_option("--ladder", pl.ladder, "cells a:eps, coarse to fine");
  poly->add_option("--xi-samples", pl.xi_samples);
  poly->add_option("--coef-samples", pl.coefficient_samples);

  // export
  auto* exp = app.add_subcommand("export", "write an algebra file");
  BuilderOptions exp_b;
  std::string exp_out;
  exp_b.add(exp, true);
  exp->add_option("--out", exp_out, "output path (stdout when absent)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return verified;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  }

  try {
    if (check->parsed()) return cmd_check(g, check_b, check_w, out);
    if (laws->parsed()) return cmd_laws(g, laws_b, law_name, law_element, law_pin, law_restrict, out);
    if (eval->parsed()) {
      if (eval_preset == "inverse-square-gap") {
        return eval_inverse_square_gap(g, number(gap_c, "--c"), number(gap_alpha, "--alpha"), number(gap_a, "--a"),
                             eval_b.eps.empty() ? Rational(1, 256) : number(eval_b.eps, "--eps"), out);
      }
      if (eval_b.builder.empty()) throw UsageError("eval needs --builder");
      return cmd_eval(g, eval_b, eval_file, eval_expr, eval_assign, eval_approx, eval_trace, out);
    }
    if (sweep_cmd->parsed()) return cmd_sweep(g, so, out);
    if (probe->parsed()) return cmd_probe(g, po, out);
    if (linsys->parsed()) return cmd_linsys(g, qs, lin_P, lin_working, out);
    if (poly->parsed()) return cmd_poly(g, pl, out);
    if (exp->parsed()) return cmd_export(exp_b, exp_out, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  }
  err << "error: no command\n";
  return usage_error;
}

}  // namespace fapprox::cli
