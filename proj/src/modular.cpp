#include "weyl/modular.hpp"

namespace weyl {

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t r = 1 % mod;
  base %= mod;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, mod);
    base = mulmod(base, base, mod);
    exp >>= 1;
  }
  return r;
}

std::uint64_t mod_u64(const bigint& v, std::uint64_t q) {
  bigint m = v % q;
  if (m < 0) m += q;
  return m.convert_to<std::uint64_t>();
}

std::vector<std::uint64_t> reduce_coeffs(const IntPolynomial& phi, std::uint64_t q) {
  require(q >= 2, "modulus must be at least 2");
  std::vector<std::uint64_t> out;
  out.reserve(phi.coefficients().size());
  for (const bigint& c : phi.coefficients()) out.push_back(mod_u64(c, q));
  return out;
}

std::uint64_t eval_reduced(std::span<const std::uint64_t> coeffs_mod_q,
                           std::uint64_t x, std::uint64_t q) {
  std::uint64_t r = 0;
  for (std::size_t i = coeffs_mod_q.size(); i-- > 0;) {
    r = static_cast<std::uint64_t>((static_cast<u128>(r) * x + coeffs_mod_q[i]) % q);
  }
  return r;
}

std::uint64_t eval_mod(const IntPolynomial& phi, const bigint& x, std::uint64_t q) {
  auto coeffs = reduce_coeffs(phi, q);
  return eval_reduced(coeffs, mod_u64(x, q), q);
}

std::vector<u128> reduce_coeffs_wrap128(const IntPolynomial& phi) {
  std::vector<u128> out;
  out.reserve(phi.coefficients().size());
  for (const bigint& c : phi.coefficients()) out.push_back(low_u128(c));
  return out;
}

}  // namespace weyl
