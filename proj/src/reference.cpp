#include "weyl/reference.hpp"

#include <cmath>

namespace weyl::ref {

namespace {

constexpr long double kTwoPi = 6.283185307179586476925286766559005768L;

const bigint kOne128 = bigint(1) << 128;

bigint mod_pow2_128(const bigint& v) {
  bigint m = v % kOne128;
  if (m < 0) m += kOne128;
  return m;
}

std::complex<long double> e_of(long double turns) {
  long double t = turns - std::floor(turns);
  return {std::cos(kTwoPi * t), std::sin(kTwoPi * t)};
}

long double to_turns(const bigint& phase_mod_2_128) {
  return std::ldexp(phase_mod_2_128.convert_to<long double>(), -128);
}

bigint euclid_mod(const bigint& v, std::uint64_t q) {
  bigint m = v % q;
  if (m < 0) m += q;
  return m;
}

}  // namespace

std::complex<long double> weyl_f(const IntPolynomial& phi, std::uint64_t P,
                                 TorusPoint alpha1, TorusPoint alpha2) {
  const bigint a1 = to_bigint(alpha1.raw());
  const bigint a2 = to_bigint(alpha2.raw());
  std::complex<long double> sum = 0;
  for (std::uint64_t x = 1; x <= P; ++x) {
    bigint n = phi.eval(x);
    bigint phase = mod_pow2_128(a1 * mod_pow2_128(n + x) + a2 * mod_pow2_128(n));
    sum += e_of(to_turns(phase));
  }
  return sum;
}

std::complex<long double> weyl_g(const IntPolynomial& phi, std::uint64_t P,
                                 TorusPoint alpha, TorusPoint gamma) {
  const bigint a = to_bigint(alpha.raw());
  const bigint g = to_bigint(gamma.raw());
  std::complex<long double> sum = 0;
  for (std::uint64_t x = 1; x <= P; ++x) {
    bigint phase = mod_pow2_128(a * x + g * mod_pow2_128(phi.eval(x)));
    sum += e_of(to_turns(phase));
  }
  return sum;
}

std::complex<long double> weyl_g_decomposed(const IntPolynomial& phi, std::uint64_t P,
                                            std::uint64_t p, std::uint64_t a,
                                            std::uint64_t c, double beta) {
  std::complex<long double> sum = 0;
  for (std::uint64_t x = 1; x <= P; ++x) {
    bigint r = euclid_mod(bigint(a) * x + bigint(c) * phi.eval(x), p);
    long double turns = r.convert_to<long double>() / static_cast<long double>(p) +
                        static_cast<long double>(beta) * static_cast<long double>(x);
    sum += e_of(turns);
  }
  return sum;
}

std::complex<long double> complete_sum(const IntPolynomial& phi, std::uint64_t q,
                                       std::uint64_t a, std::uint64_t c) {
  std::complex<long double> sum = 0;
  for (std::uint64_t x = 1; x <= q; ++x) {
    bigint r = euclid_mod(bigint(a) * x + bigint(c) * phi.eval(x), q);
    sum += e_of(r.convert_to<long double>() / static_cast<long double>(q));
  }
  return sum;
}

CurveCount curve_char_sum(const IntPolynomial& phi, std::uint64_t p,
                          std::uint64_t c, bool include_h_zero) {
  c %= p;
  std::complex<long double> sum = 0;
  std::uint64_t points = 0;
  for (std::uint64_t h = 1; h < p; ++h) {
    for (std::uint64_t m = 1; m <= p; ++m) {
      bigint v = euclid_mod(phi.eval(bigint(m) + h) - phi.eval(m) + h, p);
      if (v == 0) {
        std::uint64_t ch = static_cast<std::uint64_t>(static_cast<u128>(c) * h % p);
        sum += e_of(static_cast<long double>(ch) / static_cast<long double>(p));
        ++points;
      }
    }
  }
  if (include_h_zero) {
    // h = p row: the condition degenerates to phi'(m) + 1 == 0 mod p.
    const auto& coeffs = phi.coefficients();
    for (std::uint64_t m = 1; m <= p; ++m) {
      bigint d = 1;
      for (std::size_t j = 1; j < coeffs.size(); ++j) {
        d += coeffs[j] * j * boost::multiprecision::pow(bigint(m), static_cast<unsigned>(j - 1));
      }
      if (euclid_mod(d, p) == 0) {
        ++points;  // e(c * p / p) = 1
        sum += 1;
      }
    }
  }
  CurveCount out;
  out.p = p;
  out.c = c;
  out.char_sum = {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
  out.point_count = points;
  return out;
}

bool is_prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace weyl::ref
