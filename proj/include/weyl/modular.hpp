#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "weyl/common.hpp"
#include "weyl/polynomial.hpp"

namespace weyl {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

// Euclidean residue of an arbitrary-precision integer.
std::uint64_t mod_u64(const bigint& v, std::uint64_t q);

// Coefficients reduced mod q, lowest degree first. q >= 2.
std::vector<std::uint64_t> reduce_coeffs(const IntPolynomial& phi, std::uint64_t q);

// Horner with per-step reduction; x must already be in [0, q).
std::uint64_t eval_reduced(std::span<const std::uint64_t> coeffs_mod_q,
                           std::uint64_t x, std::uint64_t q);

// phi(x) mod q for arbitrary integer x. q >= 2 or invalid_argument.
std::uint64_t eval_mod(const IntPolynomial& phi, const bigint& x, std::uint64_t q);

// Coefficients reduced mod 2^128 (two's complement wraparound handles
// negative ones), for exact torus-phase evaluation.
std::vector<u128> reduce_coeffs_wrap128(const IntPolynomial& phi);

// phi(x) mod 2^128 via natural wraparound Horner.
inline u128 eval_wrap128(std::span<const u128> coeffs, std::uint64_t x) {
  u128 r = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) r = r * x + coeffs[i];
  return r;
}

}  // namespace weyl
