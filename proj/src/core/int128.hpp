#pragma once

#include <cstdint>
#include <optional>

#include "fapprox/rational.hpp"

namespace fapprox::detail {

using i128 = __int128;

inline std::optional<i128> to_i128(const Integer& z) {
  // |z| < 2^126 leaves headroom for one addition.
  if (mpz_sizeinbase(z.get_mpz_t(), 2) > 125) return std::nullopt;
  Integer a = abs(z);
  Integer hi = a >> 64;
  Integer lo = a - (hi << 64);
  auto hi_u = static_cast<unsigned __int128>(mpz_get_ui(hi.get_mpz_t()));
  auto lo_u = static_cast<unsigned __int128>(mpz_get_ui(lo.get_mpz_t()));
  auto v = static_cast<i128>((hi_u << 64) | lo_u);
  return sgn(z) < 0 ? -v : v;
}

inline Integer from_i128(i128 v) {
  bool neg = v < 0;
  auto u = static_cast<unsigned __int128>(neg ? -v : v);
  Integer hi(static_cast<unsigned long>(u >> 64));
  Integer lo(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFull));
  Integer r = (hi << 64) + lo;
  return neg ? Integer(-r) : r;
}

inline i128 abs128(i128 v) { return v < 0 ? -v : v; }

/// floor(a / b) for b > 0.
inline i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

/// Integer nearest to a / b (b > 0), ties toward zero.
inline i128 nearest_div(i128 a, i128 b) {
  i128 f = floor_div(a, b);
  i128 rem = a - f * b;  // 0 <= rem < b
  if (2 * rem > b) return f + 1;
  if (2 * rem < b) return f;
  return f >= 0 ? f : f + 1;
}

}  // namespace fapprox::detail
