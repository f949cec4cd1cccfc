#pragma once

#include <cstdint>
#include <vector>

#include "weyl/common.hpp"
#include "weyl/torus.hpp"

namespace weyl {

// (a, p, beta) with p prime and beta = alpha - a/p, |beta| < 1/p^2.
struct PrimeApprox {
  std::uint64_t a = 0;
  std::uint64_t p = 0;
  double beta = 0;
};

struct Convergent {
  bigint numerator;
  bigint denominator;
};

// Partial quotients a0 = 0, a1, a2, ... of alpha in [0,1). The expansion is
// the exact Euclidean one of the fixed-point rational raw()/2^128; it stops
// at max_terms or when the remainder reaches zero (precision exhaustion).
std::vector<bigint> continued_fraction(TorusPoint alpha, std::size_t max_terms);

// Convergents from the standard recurrence. When a1 = 1 the leading 0/1
// entry duplicates the denominator of 1/1 and is dropped, so denominators
// increase strictly.
std::vector<Convergent> convergents(TorusPoint alpha, std::size_t max_terms);

enum class ApproxStrategy {
  kPrimeScan,          // every prime p in range with ||p alpha|| < 1/p
  kConvergentFilter,   // convergents with prime denominator (a subset)
};

// All (a, p) with p prime in [p_min, p_max] and |alpha - a/p| < 1/p^2,
// where a is the nearest integer to p alpha. The decision is exact on the
// fixed-point representation of alpha. Sorted by p. An empty result is not
// an error.
std::vector<PrimeApprox> prime_denominator_approx(TorusPoint alpha,
                                                  std::uint64_t p_min,
                                                  std::uint64_t p_max,
                                                  ApproxStrategy strategy);

}  // namespace weyl
