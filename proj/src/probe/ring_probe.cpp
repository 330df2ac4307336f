#include "fapprox/ring_probe.hpp"

#include <algorithm>
#include <array>
#include <future>
#include <iomanip>
#include <list>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "fapprox/approximation.hpp"
#include "fapprox/laws.hpp"
#include "json.hpp"

namespace fapprox {

namespace {

using Poly = std::vector<unsigned long>;  // low to high

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

/// Remainder of f modulo a monic g over Z/p.
Poly poly_mod(Poly f, const Poly& g, unsigned long p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg) {
    const unsigned long lead = f.back();
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) f[shift + i] = (f[shift + i] + (p - lead) * g[i]) % p;
    trim(f);
  }
  return f;
}

Poly poly_mul(const Poly& a, const Poly& b, unsigned long p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  }
  trim(out);
  return out;
}

/// Monic polynomial of degree `degree` whose lower coefficients are the base-p digits of `index`.
Poly monic(std::uint64_t index, unsigned degree, unsigned long p) {
  Poly f(degree + 1, 0);
  for (unsigned i = 0; i < degree; ++i) {
    f[i] = index % p;
    index /= p;
  }
  f[degree] = 1;
  return f;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

Poly to_poly(std::uint64_t id, unsigned k, unsigned long p) {
  Poly f(k, 0);
  for (unsigned i = 0; i < k; ++i) {
    f[i] = id % p;
    id /= p;
  }
  trim(f);
  return f;
}

std::uint64_t from_poly(const Poly& f, unsigned long p) {
  std::uint64_t id = 0;
  for (std::size_t i = f.size(); i-- > 0;) id = id * p + f[i];
  return id;
}

FiniteAlgebra ring_from(std::uint64_t n, const std::function<std::uint64_t(std::uint64_t, std::uint64_t)>& add,
                        const std::function<std::uint64_t(std::uint64_t, std::uint64_t)>& mul) {
  std::vector<ElementId> add_table(n * n);
  std::vector<ElementId> mul_table(n * n);
  for (std::uint64_t a = 0; a < n; ++a) {
    for (std::uint64_t b = 0; b < n; ++b) {
      add_table[a * n + b] = static_cast<ElementId>(add(a, b));
      mul_table[a * n + b] = static_cast<ElementId>(mul(a, b));
    }
  }
  std::vector<Operation> ops;
  ops.push_back(Operation::table(2, std::move(add_table)));
  ops.push_back(Operation::table(2, std::move(mul_table)));
  FiniteAlgebra alg(Signature::ring(), n, std::move(ops), Ambient::none(), Embedding());
  alg.validate();
  return alg;
}

}  // namespace

std::uint64_t RingSpec::order() const {
  switch (family) {
    case Family::zn:
      return moduli.at(0);
    case Family::product: {
      std::uint64_t n = 1;
      for (auto m : moduli) n *= m;
      return n;
    }
    case Family::galois:
      return ipow(p, k);
    case Family::upper_triangular:
      return p * p * p;
  }
  return 0;
}

std::string RingSpec::name() const {
  switch (family) {
    case Family::zn:
      return "Z/" + std::to_string(moduli.at(0));
    case Family::product: {
      std::string s;
      for (std::size_t i = 0; i < moduli.size(); ++i) s += (i ? "xZ/" : "Z/") + std::to_string(moduli[i]);
      return s;
    }
    case Family::galois:
      return "GF(" + std::to_string(p) + "^" + std::to_string(k) + ")";
    case Family::upper_triangular:
      return "UT2(Z/" + std::to_string(p) + ")";
  }
  return "?";
}

std::vector<unsigned long> irreducible_polynomial(unsigned long p, unsigned k) {
  if (!is_prime(p)) throw Error("GF(p, k) needs a prime p, got " + std::to_string(p));
  if (k == 0) throw Error("GF(p, k) needs k >= 1");
  const std::uint64_t count = ipow(p, k);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Poly f = monic(idx, k, p);
    bool irreducible = true;
    for (unsigned d = 1; d <= k / 2 && irreducible; ++d) {
      for (std::uint64_t j = 0; j < ipow(p, d); ++j) {
        if (poly_mod(f, monic(j, d, p), p).empty()) {
          irreducible = false;
          break;
        }
      }
    }
    if (irreducible) return f;
  }
  throw Error("no irreducible polynomial found");
}

std::optional<std::string> ring_axiom_failure(const FiniteAlgebra& alg) {
  const Law laws[] = {Law::assoc("+"),         Law::comm("+"),   Law::identity("+", 0),
                      Law::inverse("+", 0),    Law::assoc("*"),  Law::distrib("*", "+")};
  for (const auto& law : laws) {
    if (auto bad = law_search(alg, law)) {
      std::string tuple;
      for (auto id : bad->tuple) tuple += (tuple.empty() ? "" : ", ") + std::to_string(id);
      return law.describe() + " fails at (" + tuple + ")";
    }
  }
  return std::nullopt;
}

Ring build_ring(const RingSpec& spec, std::uint64_t max_order) {
  const std::uint64_t n = spec.order();
  if (n == 0) throw Error("ring of order zero");
  if (n > max_order) {
    throw Error(spec.name() + " has order " + std::to_string(n) + ", above the limit " + std::to_string(max_order));
  }
  FiniteAlgebra alg = [&]() {
    switch (spec.family) {
      case RingSpec::Family::zn:
        return ring_from(n, [n](auto a, auto b) { return (a + b) % n; }, [n](auto a, auto b) { return (a * b) % n; });
      case RingSpec::Family::product: {
        const auto& m = spec.moduli;
        auto componentwise = [m](bool multiply) {
          return [m, multiply](std::uint64_t a, std::uint64_t b) {
            std::uint64_t out = 0;
            std::uint64_t scale = 1;
            for (auto mi : m) {
              const std::uint64_t x = a % mi;
              const std::uint64_t y = b % mi;
              out += scale * (multiply ? (x * y) % mi : (x + y) % mi);
              scale *= mi;
              a /= mi;
              b /= mi;
            }
            return out;
          };
        };
        return ring_from(n, componentwise(false), componentwise(true));
      }
      case RingSpec::Family::galois: {
        const unsigned long p = spec.p;
        const unsigned k = spec.k;
        const Poly f = irreducible_polynomial(p, k);
        auto add = [p, k](std::uint64_t a, std::uint64_t b) {
          std::uint64_t out = 0;
          std::uint64_t scale = 1;
          for (unsigned i = 0; i < k; ++i) {
            out += scale * ((a % p + b % p) % p);
            scale *= p;
            a /= p;
            b /= p;
          }
          return out;
        };
        auto mul = [p, k, f](std::uint64_t a, std::uint64_t b) {
          return from_poly(poly_mod(poly_mul(to_poly(a, k, p), to_poly(b, k, p), p), f, p), p);
        };
        return ring_from(n, add, mul);
      }
      case RingSpec::Family::upper_triangular: {
        const unsigned long p = spec.p;
        if (!is_prime(p)) throw Error("UT2 over Z/p needs a prime p");
        auto split = [p](std::uint64_t x) { return std::array<std::uint64_t, 3>{x % p, (x / p) % p, x / (p * p)}; };
        auto join = [p](std::uint64_t a, std::uint64_t b, std::uint64_t c) { return a + p * b + p * p * c; };
        auto add = [=](std::uint64_t x, std::uint64_t y) {
          auto u = split(x);
          auto v = split(y);
          return join((u[0] + v[0]) % p, (u[1] + v[1]) % p, (u[2] + v[2]) % p);
        };
        auto mul = [=](std::uint64_t x, std::uint64_t y) {
          auto u = split(x);
          auto v = split(y);
          return join((u[0] * v[0]) % p, (u[0] * v[1] + u[1] * v[2]) % p, (u[2] * v[2]) % p);
        };
        return ring_from(n, add, mul);
      }
    }
    throw Error("unknown ring family");
  }();
  if (auto failure = ring_axiom_failure(alg)) throw Error(spec.name() + " is not a ring: " + *failure);
  return {spec.name(), std::move(alg)};
}

std::vector<Ring> enumerate_rings(const std::vector<RingSpec>& specs, std::uint64_t max_order) {
  std::vector<Ring> out;
  for (const auto& s : specs) out.push_back(build_ring(s, max_order));
  return out;
}

// ---- embedding search ----

Rational EmbeddingError::get(ProbeObjective objective) const {
  switch (objective) {
    case ProbeObjective::additive:
      return additive;
    case ProbeObjective::multiplicative:
      return multiplicative;
    case ProbeObjective::combined:
      break;
  }
  return combined();
}

long grid_points(const Rational& a, const Rational& epsilon) {
  if (sgn(a) <= 0 || sgn(epsilon) <= 0) throw Error("embedding search needs a > 0 and eps > 0");
  return floor_of(a / epsilon).get_si();
}

FiniteAlgebra EmbeddingResult::embedded(const FiniteAlgebra& ring, const Rational& epsilon) const {
  std::vector<Rational> values;
  for (long k : grid_index) values.push_back(Rational(k) * epsilon);
  return ring.with_embedding(Ambient::real(), Embedding::values(std::move(values)));
}

EmbeddingError embedding_error(const FiniteAlgebra& alg, const std::vector<long>& grid_index, const Rational& a,
                               const Rational& epsilon) {
  if (grid_index.size() != alg.size()) throw Error("embedding has the wrong length");
  const std::size_t add = alg.signature().index_of("+");
  const std::size_t mul = alg.signature().index_of("*");
  EmbeddingError err{0, 0};
  auto j = [&](ElementId x) { return Rational(Rational(grid_index[x]) * epsilon); };
  for (ElementId x = 0; x < alg.size(); ++x) {
    for (ElementId y = 0; y < alg.size(); ++y) {
      const Rational sum = j(x) + j(y);
      if (abs(sum) <= a) err.additive = std::max(err.additive, Rational(abs(j(alg.apply(add, x, y)) - sum) / epsilon));
      const Rational prod = j(x) * j(y);
      if (abs(prod) <= a) {
        err.multiplicative = std::max(err.multiplicative, Rational(abs(j(alg.apply(mul, x, y)) - prod) / epsilon));
      }
    }
  }
  return err;
}

namespace {

/// Hill climbing state with incrementally maintained error histograms.
/// Errors are kept as integers in units of eps/q where eps = p/q.
class Climber {
 public:
  Climber(const FiniteAlgebra& alg, const EmbeddingSearchConfig& config)
      : n_(alg.size()), objective_(config.objective) {
    K_ = grid_points(config.a, config.epsilon);
    if (n_ < static_cast<std::size_t>(2 * K_ + 1)) {
      throw InfeasibleError("order " + std::to_string(n_) + " is below the " + std::to_string(2 * K_ + 1) +
                            " grid points an embedding must hit");
    }
    if (n_ > 4096) throw Error("embedding search limited to carriers of at most 4096 elements");
    const Integer eps_num = config.epsilon.get_num();
    const Integer eps_den = config.epsilon.get_den();
    if (!fits_int64(eps_num) || !fits_int64(eps_den) || eps_den > 1000000) throw Error("eps too fine for the search");
    p_ = eps_num.get_si();
    q_ = eps_den.get_si();
    const Rational mul_limit = config.a / (config.epsilon * config.epsilon);
    L_ = floor_of(mul_limit).get_si();
    const std::size_t add_idx = alg.signature().index_of("+");
    const std::size_t mul_idx = alg.signature().index_of("*");
    for (int op = 0; op < 2; ++op) {
      table_[op].resize(n_ * n_);
      results_[op].assign(n_, {});
      for (ElementId x = 0; x < n_; ++x) {
        for (ElementId y = 0; y < n_; ++y) {
          ElementId r = alg.apply(op == 0 ? add_idx : mul_idx, x, y);
          table_[op][x * n_ + y] = r;
          results_[op][r].push_back(static_cast<std::uint32_t>(x * n_ + y));
        }
      }
      stamp_[op].assign(n_ * n_, 0);
    }
    hist_[0].assign(static_cast<std::size_t>(q_ * 3 * K_ + 1), 0);
    hist_[1].assign(static_cast<std::size_t>(q_ * K_ + L_ * p_ + 1), 0);
    count_.assign(static_cast<std::size_t>(2 * K_ + 1), 0);
  }

  long K() const { return K_; }
  std::size_t size() const { return n_; }

  void load(const std::vector<long>& k) {
    k_ = k;
    std::fill(count_.begin(), count_.end(), 0);
    for (long v : k_) ++count_[static_cast<std::size_t>(v + K_)];
    for (int op = 0; op < 2; ++op) {
      std::fill(hist_[op].begin(), hist_[op].end(), 0);
      top_[op] = 0;
      sum_[op] = 0;
      for (std::size_t idx = 0; idx < n_ * n_; ++idx) add_pair(op, idx, +1);
    }
  }

  /// (max, sum) of the objective, compared lexicographically.
  std::pair<long, long> key() const {
    switch (objective_) {
      case ProbeObjective::additive:
        return {top_[0], sum_[0]};
      case ProbeObjective::multiplicative:
        return {top_[1], sum_[1]};
      case ProbeObjective::combined:
        break;
    }
    return {std::max(top_[0], top_[1]), sum_[0] + sum_[1]};
  }

  const std::vector<long>& embedding() const { return k_; }
  bool movable(ElementId x) const { return count_[static_cast<std::size_t>(k_[x] + K_)] > 1; }

  /// Sets the listed elements to new grid indices, updating the histograms.
  void assign(const std::vector<std::pair<ElementId, long>>& changes) {
    ++generation_;
    for (int op = 0; op < 2; ++op) {
      affected_[op].clear();
      for (const auto& [x, v] : changes) {
        for (ElementId y = 0; y < n_; ++y) {
          touch(op, x * n_ + y);
          touch(op, y * n_ + x);
        }
        for (auto idx : results_[op][x]) touch(op, idx);
      }
      for (auto idx : affected_[op]) add_pair(op, idx, -1);
    }
    for (const auto& [x, v] : changes) {
      --count_[static_cast<std::size_t>(k_[x] + K_)];
      k_[x] = v;
      ++count_[static_cast<std::size_t>(v + K_)];
    }
    for (int op = 0; op < 2; ++op) {
      for (auto idx : affected_[op]) add_pair(op, idx, +1);
      while (top_[op] > 0 && hist_[op][static_cast<std::size_t>(top_[op])] == 0) --top_[op];
    }
  }

 private:
  void touch(int op, std::size_t idx) {
    if (stamp_[op][idx] == generation_) return;
    stamp_[op][idx] = generation_;
    affected_[op].push_back(static_cast<std::uint32_t>(idx));
  }

  /// Error of a pair in units of eps/q, or -1 if the exact result leaves [-a, a].
  long pair_error(int op, std::size_t idx) const {
    const long x = k_[idx / n_];
    const long y = k_[idx % n_];
    const long r = k_[table_[op][idx]];
    if (op == 0) {
      if (std::abs(x + y) > K_) return -1;
      return q_ * std::abs(r - x - y);
    }
    if (std::abs(x * y) > L_) return -1;
    return std::abs(q_ * r - x * y * p_);
  }

  void add_pair(int op, std::size_t idx, int sign) {
    long e = pair_error(op, idx);
    if (e < 0) return;
    hist_[op][static_cast<std::size_t>(e)] += sign;
    sum_[op] += sign * e;
    if (sign > 0 && e > top_[op]) top_[op] = e;
  }

  std::size_t n_;
  ProbeObjective objective_;
  long K_ = 0;
  long L_ = 0;
  long p_ = 1;
  long q_ = 1;
  std::vector<ElementId> table_[2];
  std::vector<std::vector<std::uint32_t>> results_[2];
  std::vector<std::uint64_t> stamp_[2];
  std::vector<std::uint32_t> affected_[2];
  std::uint64_t generation_ = 0;
  std::vector<long> hist_[2];
  long top_[2] = {0, 0};
  long sum_[2] = {0, 0};
  std::vector<long> k_;
  std::vector<long> count_;
};

long balanced(std::uint64_t x, std::uint64_t n) {
  auto v = static_cast<long>(x % n);
  return v > static_cast<long>(n / 2) ? v - static_cast<long>(n) : v;
}

}  // namespace

EmbeddingResult best_embedding_error(const FiniteAlgebra& alg, const EmbeddingSearchConfig& config,
                                     const std::optional<std::vector<long>>& start) {
  Climber climber(alg, config);
  const std::size_t n = climber.size();
  const long K = climber.K();
  std::mt19937_64 rng(config.seed);

  std::vector<std::vector<long>> starts;
  if (start) {
    if (start->size() != n) throw Error("start embedding has the wrong length");
    for (long v : *start) {
      if (std::abs(v) > K) throw Error("start embedding leaves the grid");
    }
    starts.push_back(*start);
  }
  // Affine starts x -> balanced(u x) clamped to the grid, u coprime to the order.
  for (std::uint64_t u = 1; u < n && starts.size() < std::max<std::size_t>(config.restarts / 2, 1); ++u) {
    if (std::gcd(u, static_cast<std::uint64_t>(n)) != 1) continue;
    std::vector<long> s(n);
    for (std::uint64_t x = 0; x < n; ++x) s[x] = std::clamp(balanced(u * x, n), -K, K);
    starts.push_back(std::move(s));
  }
  while (starts.size() < std::max<std::size_t>(config.restarts, 1)) {
    std::vector<ElementId> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<long> s(n);
    std::uniform_int_distribution<long> any(-K, K);
    for (std::size_t i = 0; i < n; ++i) s[order[i]] = i < static_cast<std::size_t>(2 * K + 1) ? static_cast<long>(i) - K : any(rng);
    starts.push_back(std::move(s));
  }

  EmbeddingResult best;
  std::pair<long, long> best_key{-1, -1};
  std::uniform_int_distribution<ElementId> pick(0, static_cast<ElementId>(n - 1));
  std::uniform_int_distribution<long> point(-K, K);
  for (const auto& s : starts) {
    climber.load(s);
    auto current = climber.key();
    for (std::uint64_t it = 0; it < config.iterations && current.first > 0; ++it) {
      std::vector<std::pair<ElementId, long>> move;
      std::vector<std::pair<ElementId, long>> undo;
      const ElementId x = pick(rng);
      if ((rng() & 1) && climber.movable(x)) {
        long v = point(rng);
        if (v == climber.embedding()[x]) continue;
        move = {{x, v}};
        undo = {{x, climber.embedding()[x]}};
      } else {
        const ElementId y = pick(rng);
        const long vx = climber.embedding()[x];
        const long vy = climber.embedding()[y];
        if (vx == vy) continue;
        move = {{x, vy}, {y, vx}};
        undo = {{x, vx}, {y, vy}};
      }
      climber.assign(move);
      ++best.moves;
      auto next = climber.key();
      if (next <= current) {
        current = next;
      } else {
        climber.assign(undo);
      }
    }
    if (best_key.first < 0 || current < best_key) {
      best_key = current;
      best.grid_index = climber.embedding();
    }
    if (best_key.first == 0) break;
  }
  best.error = embedding_error(alg, best.grid_index, config.a, config.epsilon);
  return best;
}

// ---- report ----

ProbeFamily zn_family(unsigned extra) {
  return {"Z/N", [extra](const ProbeCell& cell) {
            const long K = grid_points(cell.a, cell.epsilon);
            std::vector<RingSpec> out;
            for (long n = 2 * K + 1; n <= 2 * K + 1 + static_cast<long>(extra); ++n) {
              out.push_back(RingSpec::zn(static_cast<unsigned long>(n)));
            }
            return out;
          }};
}

ProbeFamily fixed_family(std::string name, std::vector<RingSpec> members) {
  return {std::move(name), [members](const ProbeCell&) { return members; }};
}

namespace {

const char* objective_name(ProbeObjective o) {
  switch (o) {
    case ProbeObjective::additive:
      return "additive";
    case ProbeObjective::multiplicative:
      return "multiplicative";
    case ProbeObjective::combined:
      break;
  }
  return "combined";
}

std::string decimal(const Rational& r) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4) << r.get_d();
  return out.str();
}

}  // namespace

ProbeReport probe_report(const std::vector<ProbeFamily>& families, const std::vector<ProbeCell>& ladder,
                         const EmbeddingSearchConfig& config, bool control) {
  ProbeReport report;
  report.objective = config.objective;
  report.header =
      "empirical: local search over grid-valued embeddings of the listed rings only; the non-approximability "
      "claim covers every finite ring and every embedding, so this table is evidence, not proof";

  struct Job {
    ProbeEntry entry;
    std::vector<std::future<std::pair<std::string, EmbeddingResult>>> runs;
    std::vector<std::uint64_t> orders;
  };
  std::list<Job> jobs;
  for (const auto& family : families) {
    for (const auto& cell : ladder) {
      Job job;
      job.entry.family = family.name;
      job.entry.cell = cell;
      EmbeddingSearchConfig cfg = config;
      cfg.a = cell.a;
      cfg.epsilon = cell.epsilon;
      const long K = grid_points(cell.a, cell.epsilon);
      for (const auto& spec : family.members(cell)) {
        if (spec.order() < static_cast<std::uint64_t>(2 * K + 1)) continue;
        job.orders.push_back(spec.order());
        job.runs.push_back(std::async(std::launch::async, [spec, cfg] {
          Ring ring = build_ring(spec);
          return std::make_pair(ring.name, best_embedding_error(ring.algebra, cfg));
        }));
      }
      jobs.push_back(std::move(job));
    }
  }
  if (control && !families.empty()) {
    for (const auto& cell : ladder) {
      Job job;
      job.entry.family = "control";
      job.entry.cell = cell;
      job.entry.control = true;
      EmbeddingSearchConfig cfg = config;
      cfg.a = cell.a;
      cfg.epsilon = cell.epsilon;
      const long K = grid_points(cell.a, cell.epsilon);
      job.orders.push_back(static_cast<std::uint64_t>(2 * K + 1));
      job.runs.push_back(std::async(std::launch::async, [cfg, K] {
        const Rational edge = Rational(K) * cfg.epsilon;
        FiniteAlgebra grid = canonical_approximation(AmbientStructure::real_field(), Region::closed(-edge, edge),
                                                     Entourage(cfg.epsilon), cfg.epsilon);
        std::vector<long> natural;
        for (ElementId id = 0; id < grid.size(); ++id) natural.push_back(floor_of(grid.embed(id) / cfg.epsilon).get_si());
        return std::make_pair(std::string("canonical grid"), best_embedding_error(grid, cfg, natural));
      }));
      jobs.push_back(std::move(job));
    }
  }

  for (auto& job : jobs) {
    ProbeEntry entry = job.entry;
    entry.candidates = job.runs.size();
    for (std::size_t i = 0; i < job.runs.size(); ++i) {
      auto [name, result] = job.runs[i].get();
      if (!entry.feasible || result.error.get(config.objective) < entry.error.get(config.objective)) {
        entry.feasible = true;
        entry.best_ring = name;
        entry.order = job.orders[i];
        entry.error = result.error;
      }
    }
    report.entries.push_back(entry);
  }
  return report;
}

std::string ProbeReport::to_json() const {
  nlohmann::ordered_json j;
  j["header"] = header;
  j["objective"] = objective_name(objective);
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    nlohmann::ordered_json r;
    r["family"] = e.family;
    r["control"] = e.control;
    r["a"] = to_decimal_string(e.cell.a);
    r["eps"] = to_decimal_string(e.cell.epsilon);
    r["feasible"] = e.feasible;
    r["candidates"] = e.candidates;
    if (e.feasible) {
      r["best_ring"] = e.best_ring;
      r["order"] = e.order;
      r["additive_error"] = to_string(e.error.additive);
      r["multiplicative_error"] = to_string(e.error.multiplicative);
      r["combined_error"] = to_string(e.error.combined());
    }
    j["entries"].push_back(r);
  }
  return j.dump(1);
}

std::string ProbeReport::to_table() const {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"family", "a", "eps", "best", "order", "add/eps", "mul/eps", "max/eps"});
  for (const auto& e : entries) {
    if (!e.feasible) {
      rows.push_back({e.family, to_decimal_string(e.cell.a), to_decimal_string(e.cell.epsilon), "infeasible", "-", "-", "-", "-"});
      continue;
    }
    rows.push_back({e.family, to_decimal_string(e.cell.a), to_decimal_string(e.cell.epsilon), e.best_ring,
                    std::to_string(e.order), decimal(e.error.additive), decimal(e.error.multiplicative),
                    decimal(e.error.combined())});
  }
  std::vector<std::size_t> width(rows[0].size(), 0);
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) width[k] = std::max(width[k], row[k].size());
  }
  std::ostringstream out;
  out << "# " << header << "\n# objective: " << objective_name(objective) << "\n";
  if (entries.empty()) return out.str();
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

}  // namespace fapprox
