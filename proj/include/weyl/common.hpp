#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace weyl {

using u128 = unsigned __int128;
using i128 = __int128;
using bigint = boost::multiprecision::cpp_int;

inline bigint to_bigint(u128 v) {
  bigint r = static_cast<std::uint64_t>(v >> 64);
  r <<= 64;
  r |= static_cast<std::uint64_t>(v);
  return r;
}

// Low 128 bits of v taken as a residue mod 2^128 (Euclidean, so negative
// inputs land in [0, 2^128) as well).
inline u128 low_u128(const bigint& v) {
  static const bigint kMod = bigint(1) << 128;
  bigint m = v % kMod;
  if (m < 0) m += kMod;
  u128 hi = (m >> 64).convert_to<std::uint64_t>();
  u128 lo = (m & 0xffffffffffffffffULL).convert_to<std::uint64_t>();
  return (hi << 64) | lo;
}

inline void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

}  // namespace weyl
