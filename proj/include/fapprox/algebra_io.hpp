#pragma once

#include <string>

#include "fapprox/finite_algebra.hpp"

namespace fapprox {

/// JSON document with signature, carrier_size, row-major tables, the ambient
/// and the embedding ("num/den" strings, or {p, valuation, digits} records for
/// p-adic values with finite expansions). Lazy operations are materialized.
std::string algebra_to_json(const FiniteAlgebra& alg);
FiniteAlgebra algebra_from_json(const std::string& text);

void save_algebra(const FiniteAlgebra& alg, const std::string& path);
FiniteAlgebra load_algebra(const std::string& path);

}  // namespace fapprox
