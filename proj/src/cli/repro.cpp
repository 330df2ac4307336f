#include "fapprox/repro.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <random>
#include <sstream>

#include "fapprox/pbf.hpp"
#include "json.hpp"

namespace fapprox {

namespace {

std::string short_number(const Rational& q) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", q.get_d());
  return buf;
}

Rational abs_bound(const ExactScalar& x) { return std::max(abs(x.lo()), abs(x.hi())); }

std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(rows[0].size(), 0);
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) width[k] = std::max(width[k], row[k].size());
  }
  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k + 1 == row.size()) {
        out << row[k];
      } else {
        out << std::left << std::setw(static_cast<int>(width[k] + 2)) << row[k];
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace

// ---- linear system ----

CubeRoots cube_roots(unsigned digits) { return {root_enclosure(2, 3, digits), root_enclosure(4, 3, digits)}; }

Rational truncate_significant(const ExactScalar& x, unsigned digits) {
  if (digits == 0) throw Error("need at least one digit");
  if (sgn(x.lo()) <= 0) throw UndecidableError("truncation needs a positive enclosure");
  auto cut = [digits](const Rational& v) -> Rational {
    // 10^(e-1) <= v < 10^e
    long e = 0;
    while (v >= Rational(pow10(static_cast<unsigned long>(e)))) ++e;
    while (v < pow_int(10, e - 1)) --e;
    const Rational scale = pow_int(10, static_cast<long>(digits) - e);
    return Rational(floor_of(v * scale)) / scale;
  };
  Rational lo = cut(x.lo());
  Rational hi = cut(x.hi());
  if (lo != hi) throw UndecidableError("enclosure straddles a truncation cut; use more guard digits");
  return lo;
}

std::optional<std::pair<Rational, Rational>> solve_exact(const Rational& a, const Rational& b) {
  Rational det = b - a * a;
  if (sgn(det) == 0) return std::nullopt;
  return std::make_pair(Rational((b * b - 2 * a) / det), Rational((2 - a * b) / det));
}

LinsysReport repro_linsys(const LinsysConfig& config) {
  if (config.Q.empty()) throw Error("no Q values");
  LinsysReport report;
  for (unsigned Q : config.Q) {
    if (Q < 5) throw Error("Q must be at least 5");
    const unsigned guard = Q + 5;
    CubeRoots inputs = cube_roots(guard);
    CubeRoots reference = cube_roots(Q + 30);

    LinsysLevel level;
    level.Q = Q;
    level.working.Q = config.working_digits != 0 ? config.working_digits : 2 * Q + 2;
    level.working.P = config.P != 0 ? config.P : static_cast<long>(2 * Q + 2);
    if (level.working.Q < Q) throw Error("working precision below Q");
    const FPParams& w = level.working;
    level.a = fp_round(truncate_significant(inputs.root2, Q), w);
    level.b = fp_round(truncate_significant(inputs.root4, Q), w);

    const DecimalFP two = fp_round(Rational(2), w);
    const DecimalFP det = fp_sub(level.b, fp_mul(level.a, level.a, w), w);
    const DecimalFP det_x = fp_sub(fp_mul(level.b, level.b, w), fp_mul(two, level.a, w), w);
    const DecimalFP det_y = fp_sub(two, fp_mul(level.a, level.b, w), w);
    if (det.is_zero()) {
      level.singular = true;
      level.x = DecimalFP::zero(w.Q);
      level.y = DecimalFP::zero(w.Q);
    } else {
      level.x = fp_div(det_x, det, w);
      level.y = fp_div(det_y, det, w);
      level.residual = ExactScalar(level.x.value()) + reference.root2 * ExactScalar(level.y.value()) - reference.root4;
      level.residual_bound = abs_bound(level.residual);
    }
    report.levels.push_back(level);
  }
  for (std::size_t i = 0; i < report.levels.size(); ++i) {
    for (std::size_t j = i + 1; j < report.levels.size(); ++j) {
      const auto& u = report.levels[i];
      const auto& v = report.levels[j];
      if (u.singular || v.singular) continue;
      Rational dx = abs(u.x.value() - v.x.value());
      Rational dy = abs(u.y.value() - v.y.value());
      report.distances.push_back({i, j, std::max(dx, dy)});
    }
  }
  return report;
}

std::string LinsysReport::to_json() const {
  nlohmann::ordered_json j;
  j["system"] = "x + a y = b, a x + b y = 2";
  j["target"] = "x + cbrt(2) y = cbrt(4)";
  j["levels"] = nlohmann::ordered_json::array();
  for (const auto& l : levels) {
    nlohmann::ordered_json e;
    e["Q"] = l.Q;
    e["working_digits"] = l.working.Q;
    e["a"] = l.a.to_string();
    e["b"] = l.b.to_string();
    e["singular"] = l.singular;
    if (!l.singular) {
      e["x"] = l.x.to_string();
      e["y"] = l.y.to_string();
      e["residual_bound"] = to_decimal_string(l.residual_bound);
    }
    j["levels"].push_back(e);
  }
  j["distances"] = nlohmann::ordered_json::array();
  for (const auto& d : distances) {
    j["distances"].push_back(
        {{"Q1", levels[d.i].Q}, {"Q2", levels[d.j].Q}, {"max_norm", to_decimal_string(d.value)}});
  }
  return j.dump(1);
}

std::string LinsysReport::to_table() const {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"Q", "a", "b", "x", "y", "|residual| <="});
  for (const auto& l : levels) {
    if (l.singular) {
      rows.push_back({std::to_string(l.Q), to_decimal_string(l.a.value()), to_decimal_string(l.b.value()), "singular",
                      "-", "-"});
    } else {
      rows.push_back({std::to_string(l.Q), to_decimal_string(l.a.value()), to_decimal_string(l.b.value()),
                      short_number(l.x.value()), short_number(l.y.value()), short_number(l.residual_bound)});
    }
  }
  std::string out = "system: x + a y = b, a x + b y = 2 with a, b the truncated cube roots of 2 and 4\n";
  out += render_table(rows);
  for (const auto& d : distances) {
    out += "distance Q=" + std::to_string(levels[d.i].Q) + " vs Q=" + std::to_string(levels[d.j].Q) +
           " (max norm): " + short_number(d.value) + "\n";
  }
  return out;
}

// ---- polynomial approximation ----

UnaryFunction UnaryFunction::parse(const std::string& name) {
  if (name == "sin") return {UnaryBuiltin::sin};
  if (name == "square") return {UnaryBuiltin::square};
  if (name == "reciprocal-shifted") return {UnaryBuiltin::reciprocal_shifted};
  throw Error("unknown function '" + name + "' (sin, square, reciprocal-shifted)");
}

std::string UnaryFunction::name() const {
  switch (id) {
    case UnaryBuiltin::sin: return "sin";
    case UnaryBuiltin::square: return "square";
    case UnaryBuiltin::reciprocal_shifted: return "reciprocal-shifted";
  }
  return "";
}

ExactScalar UnaryFunction::eval(const Rational& x, const Rational& tol) const {
  switch (id) {
    case UnaryBuiltin::sin: return sin_enclosure(x, tol);
    case UnaryBuiltin::square: return ExactScalar(x * x);
    case UnaryBuiltin::reciprocal_shifted:
      if (sgn(x + 2) == 0) throw Error("1/(x + 2) undefined at -2");
      return ExactScalar(Rational(1 / (x + 2)));
  }
  throw Error("bad function id");
}

std::vector<Rational> UnaryFunction::default_coefficients() const {
  switch (id) {
    case UnaryBuiltin::sin: return {0, 1, 0, Rational(-1, 6), 0, Rational(1, 120)};
    case UnaryBuiltin::square: return {0, 0, 1};
    case UnaryBuiltin::reciprocal_shifted: {
      // sum_{k <= 6} (-x)^k / 2^(k+1)
      std::vector<Rational> c;
      for (long k = 0; k <= 6; ++k) c.push_back((k % 2 == 0 ? 1 : -1) * pow_int(Rational(1, 2), k + 1));
      return c;
    }
  }
  return {};
}

Rational UnaryFunction::default_d() const { return 1; }

Rational UnaryFunction::default_delta() const {
  switch (id) {
    case UnaryBuiltin::sin: return Rational(1, 5040);  // |x|^7 / 7!
    case UnaryBuiltin::square: return Rational(1, 1000);
    case UnaryBuiltin::reciprocal_shifted: return Rational(1, 128);  // |x/2|^7 / (2 + x)
  }
  return 0;
}

PolyConfig PolyConfig::defaults(UnaryFunction g) {
  PolyConfig c;
  c.g = g;
  c.coefficients = g.default_coefficients();
  c.d = g.default_d();
  c.d_inner = Rational(9, 10);
  c.delta = g.default_delta();
  c.delta_inner = 2 * c.delta;
  Rational eps(1, 16);
  for (long i = 0; i < 9; ++i) {
    c.ladder.push_back({Rational(2 + i), eps});
    eps /= 4;
  }
  return c;
}

namespace {

Integer nearest_index(const Rational& x, const Rational& eps) {
  Rational u = x / eps;
  Integer f = floor_of(u);
  Rational rem = u - Rational(f);
  const int c = cmp(2 * rem, Rational(1));
  if (c > 0) return f + 1;
  if (c < 0) return f;
  return sgn(f) >= 0 ? f : Integer(f + 1);
}

struct Grid {
  Rational eps;
  Integer kmin, kmax;

  explicit Grid(const PolyCell& cell)
      : eps(cell.epsilon), kmin(floor_of(-cell.a / cell.epsilon)), kmax(ceil_of(cell.a / cell.epsilon)) {}

  Integer clamp(Integer k) const {
    if (k < kmin) return kmin;
    if (k > kmax) return kmax;
    return k;
  }
  Rational round(const Rational& x) const { return Rational(clamp(nearest_index(x, eps))) * eps; }
};

Rational evaluate(const Grid& grid, const std::vector<Rational>& coefficients, const Rational& xi) {
  const std::size_t n = coefficients.size() - 1;
  std::vector<Rational> powers{Rational(1), xi};
  for (std::size_t k = 2; k <= n; ++k) powers.push_back(grid.round(powers.back() * xi));
  Rational sum = n == 0 ? coefficients[0] : grid.round(coefficients[n] * powers[n]);
  for (std::size_t k = n; k-- > 0;) {
    Rational term = k == 0 ? coefficients[0] : grid.round(coefficients[k] * powers[k]);
    sum = grid.round(sum + term);
  }
  return sum;
}

/// Nearest grid point to g(x), refined until the enclosure decides it.
Rational rounded_g(const UnaryFunction& g, const Grid& grid, const Rational& x) {
  Rational tol = grid.eps / 1024;
  for (int attempt = 0; attempt < 8; ++attempt) {
    ExactScalar v = g.eval(x, tol);
    Integer lo = grid.clamp(nearest_index(v.lo(), grid.eps));
    Integer hi = grid.clamp(nearest_index(v.hi(), grid.eps));
    if (lo == hi) return Rational(lo) * grid.eps;
    tol /= 1 << 20;
  }
  throw Error("oracle precision exhausted rounding " + g.name() + "(" + to_string(x) + ")");
}

Rational exact_polynomial(const std::vector<Rational>& c, const Rational& x) {
  Rational s = 0;
  for (std::size_t k = c.size(); k-- > 0;) s = s * x + c[k];
  return s;
}

struct Sample {
  std::vector<Rational> xi;
  std::vector<std::vector<Rational>> tuples;
};

Sample draw(const PolyConfig& config, const Grid& grid, const Rational& radius, std::uint64_t salt) {
  std::mt19937_64 rng(config.seed * 0x9E3779B97F4A7C15ull + salt);
  Sample s;
  // xi grid indices in [-d', d'].
  const Integer lo = grid.clamp(ceil_of(-config.d_inner / grid.eps));
  const Integer hi = grid.clamp(floor_of(config.d_inner / grid.eps));
  const Integer count = hi - lo + 1;
  if (count <= Integer(static_cast<unsigned long>(config.xi_samples))) {
    for (Integer k = lo; k <= hi; ++k) s.xi.push_back(Rational(k) * grid.eps);
  } else {
    s.xi.push_back(Rational(lo) * grid.eps);
    s.xi.push_back(Rational(hi) * grid.eps);
    s.xi.push_back(0);
    gmp_randclass r(gmp_randinit_default);
    r.seed(static_cast<unsigned long>(rng()));
    while (s.xi.size() < config.xi_samples) s.xi.push_back(Rational(lo + Integer(r.get_z_range(count))) * grid.eps);
  }
  // Coefficient grid indices with |k eps - b| < radius.
  std::vector<std::pair<Integer, Integer>> range;
  for (const auto& b : config.coefficients) {
    Integer kl = grid.clamp(floor_of((b - radius) / grid.eps) + 1);
    Integer kh = grid.clamp(ceil_of((b + radius) / grid.eps) - 1);
    if (kl > kh) throw Error("no grid point within the coefficient radius of " + to_string(b));
    range.emplace_back(kl, kh);
  }
  auto tuple_at = [&](auto pick) {
    std::vector<Rational> t;
    for (std::size_t i = 0; i < range.size(); ++i) t.push_back(Rational(pick(i)) * grid.eps);
    return t;
  };
  s.tuples.push_back(tuple_at([&](std::size_t i) { return range[i].first; }));
  s.tuples.push_back(tuple_at([&](std::size_t i) { return range[i].second; }));
  s.tuples.push_back(tuple_at([&](std::size_t i) {
    return grid.clamp(nearest_index(config.coefficients[i], grid.eps));
  }));
  gmp_randclass r(gmp_randinit_default);
  r.seed(static_cast<unsigned long>(rng()));
  while (s.tuples.size() < std::max<std::size_t>(config.coefficient_samples, 3)) {
    s.tuples.push_back(tuple_at([&](std::size_t i) {
      return Integer(range[i].first + Integer(r.get_z_range(Integer(range[i].second - range[i].first + 1))));
    }));
  }
  return s;
}

PolyCellResult run_cell(const PolyConfig& config, const PolyCell& cell, const Rational& radius, std::uint64_t salt) {
  Grid grid(cell);
  Sample s = draw(config, grid, radius, salt);
  PolyCellResult result{cell, radius, 0, 0, std::nullopt};
  for (const auto& xi : s.xi) {
    // Premise on the sample: |g(xi) - poly(xi)| <= delta.
    ExactScalar exact = config.g.eval(xi, config.delta / 1024 + grid.eps / 1024);
    if (abs(exact.value - exact_polynomial(config.coefficients, xi)) - exact.radius > config.delta) {
      throw Error("premise fails: |g - poly| exceeds delta at x = " + to_string(xi));
    }
    const Rational g_value = rounded_g(config.g, grid, xi);
    for (const auto& tuple : s.tuples) {
      ++result.checks;
      Rational p = evaluate(grid, tuple, xi);
      Rational dist = abs(g_value - p);
      if (dist >= config.delta_inner) {
        if (result.failures++ == 0) result.first_failure = PolyFailure{xi, tuple, g_value, p, dist};
      }
    }
  }
  return result;
}

}  // namespace

Rational grid_round(const Rational& x, const PolyCell& cell) { return Grid(cell).round(x); }

Rational grid_polynomial(const std::vector<Rational>& coefficients, const Rational& xi, const PolyCell& cell) {
  if (coefficients.empty()) throw Error("empty polynomial");
  return evaluate(Grid(cell), coefficients, xi);
}

PolyReport repro_poly(const PolyConfig& config) {
  if (config.coefficients.empty()) throw Error("no coefficients");
  if (sgn(config.delta) < 0) throw Error("delta must be nonnegative");
  if (config.delta_inner <= config.delta) throw Error("delta' must exceed delta");
  if (sgn(config.d_inner) <= 0 || config.d_inner >= config.d) throw Error("need 0 < d' < d");
  if (config.ladder.empty()) throw Error("empty ladder");
  for (std::size_t i = 0; i < config.ladder.size(); ++i) {
    const auto& c = config.ladder[i];
    if (sgn(c.epsilon) <= 0) throw Error("ladder eps must be positive");
    if (c.a <= config.d_inner) throw Error("ladder a must exceed d'");
    if (i > 0 && (c.epsilon >= config.ladder[i - 1].epsilon || c.a < config.ladder[i - 1].a)) {
      throw Error("ladder must refine: eps decreasing, a nondecreasing");
    }
  }

  PolyReport report;
  report.function = config.g.name();
  report.coefficients = config.coefficients;
  report.d = config.d;
  report.d_inner = config.d_inner;
  report.delta = config.delta;
  report.delta_inner = config.delta_inner;

  const std::size_t L = config.ladder.size();
  std::vector<PolyCellResult> diagonal;
  for (std::size_t k = 0; k < L; ++k) {
    const Rational& radius = config.ladder[k].epsilon;
    std::vector<PolyCellResult> tail;
    bool all = true;
    for (std::size_t j = k; j < L && all; ++j) {
      tail.push_back(run_cell(config, config.ladder[j], radius, j));
      all = tail.back().passed();
    }
    if (all) {
      report.threshold_cell = k;
      report.cells = diagonal;
      report.cells.insert(report.cells.end(), tail.begin(), tail.end());
      return report;
    }
    diagonal.push_back(tail.front());
  }
  report.cells = diagonal;
  return report;
}

std::string PolyReport::to_json() const {
  nlohmann::ordered_json j;
  j["function"] = function;
  j["coefficients"] = nlohmann::ordered_json::array();
  for (const auto& c : coefficients) j["coefficients"].push_back(to_string(c));
  j["d"] = format_number(d);
  j["d_inner"] = format_number(d_inner);
  j["delta"] = to_string(delta);
  j["delta_inner"] = to_string(delta_inner);
  j["evidence"] = "empirical";
  j["cells"] = nlohmann::ordered_json::array();
  for (const auto& c : cells) {
    nlohmann::ordered_json e;
    e["a"] = format_number(c.cell.a);
    e["eps"] = format_number(c.cell.epsilon);
    e["coefficient_radius"] = format_number(c.coefficient_radius);
    e["checks"] = c.checks;
    e["failures"] = c.failures;
    if (c.first_failure) {
      const auto& f = *c.first_failure;
      e["first_failure"] = {{"xi", format_number(f.xi)},
                            {"g", format_number(f.g_value)},
                            {"poly", format_number(f.poly_value)},
                            {"distance", format_number(f.distance)}};
    }
    j["cells"].push_back(e);
  }
  if (threshold_cell) {
    const auto& c = cells[*threshold_cell];
    j["threshold"] = {{"index", *threshold_cell}, {"a0", format_number(c.cell.a)}, {"eps0", format_number(c.cell.epsilon)}};
  } else {
    j["threshold"] = nullptr;
  }
  return j.dump(1);
}

std::string PolyReport::to_table() const {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"cell", "a", "eps", "coef radius", "checks", "failures", "first failure"});
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    std::string note = c.first_failure ? "|g - p| = " + short_number(c.first_failure->distance) : "";
    if (threshold_cell && i == *threshold_cell) note += (note.empty() ? "" : "  ") + std::string("<- threshold");
    rows.push_back({std::to_string(i), format_number(c.cell.a), format_number(c.cell.epsilon),
                    format_number(c.coefficient_radius), std::to_string(c.checks), std::to_string(c.failures), note});
  }
  std::string out = "g = " + function + " on [-" + format_number(d) + ", " + format_number(d) +
                    "], delta = " + to_string(delta) + ", delta' = " + to_string(delta_inner) + ", xi in [-" +
                    format_number(d_inner) + ", " + format_number(d_inner) + "]\n";
  out += render_table(rows);
  if (threshold_cell) {
    const auto& c = cells[*threshold_cell];
    out += "empirical a0 = " + format_number(c.cell.a) + ", eps0 = " + format_number(c.cell.epsilon) + "\n";
  } else {
    out += "no passing threshold on this ladder\n";
  }
  return out;
}

}  // namespace fapprox
