#include <algorithm>
#include <future>
#include <iomanip>
#include <random>
#include <sstream>

#include "fapprox/pbf.hpp"
#include "fapprox/real_systems.hpp"
#include "json.hpp"

namespace fapprox {

namespace {

Region cell_region(const Cell& cell) { return Region::closed(-cell.a, cell.a); }

void check_cell(const Cell& cell) {
  if (sgn(cell.a) <= 0 || sgn(cell.epsilon) <= 0) throw Error("ladder cells need a > 0 and eps > 0");
}

/// Smallest integer k >= 0 with base^k >= x.
long ceil_log(const Rational& x, long base) {
  long k = 0;
  Rational v = 1;
  while (v < x) {
    v *= base;
    ++k;
  }
  return k;
}

}  // namespace

Builder canonical_builder(const AmbientStructure& structure) {
  return {"canonical", [structure](const Cell& cell) {
            check_cell(cell);
            return canonical_approximation(structure, cell_region(cell), Entourage(cell.epsilon), cell.epsilon);
          }};
}

Builder apq_builder() {
  return {"apq", [](const Cell& cell) {
            check_cell(cell);
            FPParams params;
            params.P = 1;
            params.Q = 1;
            while (fp_max(params) < cell.a) ++params.P;
            // 10^(P-Q) <= eps  <=>  10^(Q-P) >= 1/eps
            const long q = params.P + ceil_log(1 / cell.epsilon, 10);
            params.Q = static_cast<unsigned>(std::max(q, 1L));
            return build_APQ(params);
          }};
}

Builder modular_builder() {
  return {"modular", [](const Cell& cell) {
            check_cell(cell);
            ModularParams params;
            params.epsilon = cell.epsilon;
            params.M = ceil_of(cell.a / cell.epsilon).get_si();
            return build_modular(params);
          }};
}

Builder perturbed_builder(std::uint64_t seed) {
  return {"perturbed", [seed](const Cell& cell) {
            check_cell(cell);
            // Grid k*eps shifted by a random multiple of eps/64 in [-eps/4, eps/4]:
            // neighbouring points stay within 3eps/2 of each other, so every point
            // of C and every exact result is within 3eps/4 of the grid.
            const Rational unit = cell.epsilon / 64;
            const long lo = floor_of(-cell.a / cell.epsilon).get_si() - 1;
            const long hi = ceil_of(cell.a / cell.epsilon).get_si() + 1;
            std::mt19937_64 rng(seed);
            std::uniform_int_distribution<long> jitter(-16, 16);
            std::vector<Rational> values;
            for (long k = lo; k <= hi; ++k) {
              Rational v = Rational(k * 64 + jitter(rng)) * unit;
              v.canonicalize();
              values.push_back(v);
            }
            auto shared = std::make_shared<std::vector<Rational>>(values);
            auto nearest = [shared](const Rational& x) {
              const auto& vs = *shared;
              auto it = std::lower_bound(vs.begin(), vs.end(), x);
              if (it == vs.begin()) return ElementId{0};
              if (it == vs.end()) return static_cast<ElementId>(vs.size() - 1);
              auto below = it - 1;
              // ties go to the lower point
              return static_cast<ElementId>(x - *below <= *it - x ? below - vs.begin() : it - vs.begin());
            };
            std::vector<Operation> ops;
            ops.push_back(Operation::lazy(2, [shared, nearest](std::span<const ElementId> a) {
              return nearest((*shared)[a[0]] + (*shared)[a[1]]);
            }));
            ops.push_back(Operation::lazy(2, [shared, nearest](std::span<const ElementId> a) {
              return nearest((*shared)[a[0]] * (*shared)[a[1]]);
            }));
            const std::size_t size = values.size();
            return FiniteAlgebra(Signature::ring(), size, std::move(ops), Ambient::real(),
                                 Embedding::values(std::move(values)));
          }};
}

namespace {

CellResult run_cell(const SweepConfig& config, const Formula& target, const Builder& builder, const Cell& cell) {
  CellResult out;
  out.builder = builder.name;
  out.cell = cell;
  FiniteAlgebra alg = builder.build(cell);
  out.carrier_size = alg.size();
  if (config.verify_cells) {
    out.verified = check_approximation(alg, cell_region(cell), Entourage(cell.epsilon)).ok();
  }
  const auto free = target.free_variables();
  // Elements within W_0 of each free point.
  std::vector<std::vector<ElementId>> candidates;
  const Entourage w0(cell.epsilon);
  for (const auto& point : config.points) {
    std::vector<ElementId> near;
    for (ElementId id = 0; id < alg.size(); ++id) {
      if (alg.ambient().close(alg.embed(id), point, w0)) near.push_back(id);
    }
    candidates.push_back(std::move(near));
  }
  std::vector<std::size_t> idx(candidates.size(), 0);
  const bool empty = std::any_of(candidates.begin(), candidates.end(), [](const auto& c) { return c.empty(); });
  if (!empty) {
    for (;;) {
      Assignment assignment;
      for (std::size_t i = 0; i < free.size(); ++i) assignment[free[i]] = candidates[i][idx[i]];
      ++out.tuples;
      EvalOptions options;
      options.max_trace_depth = 0;
      if (!eval_finite(target, alg, assignment, options).value) {
        if (out.failures++ == 0) {
          for (std::size_t i = 0; i < free.size(); ++i) {
            out.first_failure.push_back(free[i] + "=" + alg.label(candidates[i][idx[i]]));
          }
        }
      }
      bool done = true;
      for (std::size_t k = idx.size(); k-- > 0;) {
        if (++idx[k] < candidates[k].size()) {
          done = false;
          break;
        }
        idx[k] = 0;
      }
      if (done) break;
    }
  }
  out.verdict = out.tuples > 0 && out.failures == 0;
  return out;
}

std::string cell_text(const Cell& c) { return "a=" + format_number(c.a) + " eps=" + format_number(c.epsilon); }

}  // namespace

SweepReport sweep(const SweepConfig& config) {
  if (config.ladder.empty()) throw Error("sweep needs a non-empty ladder");
  if (config.builders.empty()) throw Error("sweep needs at least one builder");
  for (std::size_t i = 0; i < config.ladder.size(); ++i) {
    check_cell(config.ladder[i]);
    if (i > 0 && (config.ladder[i].a < config.ladder[i - 1].a ||
                  config.ladder[i].epsilon > config.ladder[i - 1].epsilon)) {
      throw Error("ladder must be ordered by refinement (a non-decreasing, eps non-increasing)");
    }
  }
  if (!check_regular(config.formula, config.c) || !check_regular(config.formula, config.c_prime)) {
    throw Error("bound tuples must be regular for the formula");
  }
  if (!check_ll(config.formula, config.c, config.c_prime)) throw Error("bound tuples violate c << c'");
  const Formula target = approximate(with_bounds(config.formula, config.c_prime), config.w_prime);
  if (target.free_variables().size() != config.points.size()) {
    throw Error("expected " + std::to_string(target.free_variables().size()) + " free points, got " +
                std::to_string(config.points.size()));
  }

  std::vector<std::future<CellResult>> jobs;
  for (const auto& cell : config.ladder) {
    for (const auto& builder : config.builders) {
      jobs.push_back(std::async(std::launch::async, [&config, &target, &builder, cell] {
        return run_cell(config, target, builder, cell);
      }));
    }
  }
  SweepReport report;
  report.formula = format_formula(target);
  report.ladder = config.ladder;
  for (auto& job : jobs) report.cells.push_back(job.get());

  const std::size_t per_cell = config.builders.size();
  for (std::size_t i = config.ladder.size(); i-- > 0;) {
    bool all = std::all_of(report.cells.begin() + static_cast<long>(i * per_cell),
                           report.cells.begin() + static_cast<long>((i + 1) * per_cell),
                           [](const CellResult& r) { return r.verdict; });
    if (!all) break;
    report.threshold_cell = i;
  }
  return report;
}

std::string SweepReport::to_json() const {
  nlohmann::ordered_json j;
  j["formula"] = formula;
  j["evidence"] = "empirical";
  j["cells"] = nlohmann::ordered_json::array();
  for (const auto& r : cells) {
    nlohmann::ordered_json c;
    c["builder"] = r.builder;
    c["a"] = format_number(r.cell.a);
    c["eps"] = format_number(r.cell.epsilon);
    c["carrier_size"] = r.carrier_size;
    c["tuples"] = r.tuples;
    c["failures"] = r.failures;
    c["verdict"] = r.verdict;
    if (r.verified) c["verified"] = *r.verified;
    if (!r.first_failure.empty()) c["first_failure"] = r.first_failure;
    j["cells"].push_back(c);
  }
  if (threshold_cell) {
    j["threshold"] = {{"index", *threshold_cell},
                      {"a", format_number(ladder[*threshold_cell].a)},
                      {"eps", format_number(ladder[*threshold_cell].epsilon)}};
  } else {
    j["threshold"] = nullptr;
  }
  return j.dump(1);
}

std::string SweepReport::to_table() const {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"cell", "a", "eps", "builder", "carrier", "tuples", "failures", "verdict"});
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& r = cells[i];
    std::size_t cell_index = 0;
    for (std::size_t k = 0; k < ladder.size(); ++k) {
      if (ladder[k].a == r.cell.a && ladder[k].epsilon == r.cell.epsilon) cell_index = k;
    }
    std::string verdict = r.verdict ? "true" : "false";
    if (r.verified && !*r.verified) verdict += " (not an approximation)";
    if (threshold_cell && cell_index == *threshold_cell) verdict += "  <- threshold";
    rows.push_back({std::to_string(cell_index), format_number(r.cell.a), format_number(r.cell.epsilon), r.builder,
                    std::to_string(r.carrier_size), std::to_string(r.tuples), std::to_string(r.failures), verdict});
  }
  std::vector<std::size_t> width(rows[0].size(), 0);
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) width[k] = std::max(width[k], row[k].size());
  }
  std::ostringstream out;
  out << "formula: " << formula << "\n";
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
  out << "threshold: " << (threshold_cell ? cell_text(ladder[*threshold_cell]) : std::string("none")) << " (empirical)\n";
  return out.str();
}

}  // namespace fapprox
