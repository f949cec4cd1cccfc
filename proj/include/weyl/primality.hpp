#pragma once

#include <cstdint>
#include <vector>

namespace weyl {

// Deterministic Miller-Rabin, correct for every n < 2^64.
bool is_prime(std::uint64_t n);

// Primes p with lo <= p <= hi, ascending.
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

}  // namespace weyl
