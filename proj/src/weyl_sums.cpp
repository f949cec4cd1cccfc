#include "weyl/weyl_sums.hpp"

#include <algorithm>
#include <cmath>

#include "weyl/accumulator.hpp"
#include "weyl/complete_sums.hpp"
#include "weyl/modular.hpp"
#include "weyl/primality.hpp"

namespace weyl {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Fixed block decomposition of [1, P]: blocks are summed independently
// (possibly in parallel) and merged in ascending order, giving results that
// are bitwise independent of the thread count.
constexpr std::uint64_t kBlock = 1 << 14;

template <typename BlockFn>
std::complex<double> blocked_sum(std::uint64_t n, BlockFn block) {
  if (n == 0) return {0.0, 0.0};
  const std::int64_t nblocks = static_cast<std::int64_t>((n + kBlock - 1) / kBlock);
  std::vector<std::complex<double>> partial(nblocks);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < nblocks; ++b) {
    std::uint64_t lo = static_cast<std::uint64_t>(b) * kBlock + 1;
    std::uint64_t hi = std::min(n, lo + kBlock - 1);
    partial[b] = block(lo, hi);
  }
  ComplexAccumulator total;
  for (const auto& z : partial) total.add(z);
  return total.value();
}

}  // namespace

std::complex<double> weyl_f(const WeylParams& params) {
  require(params.P >= 1, "weyl_f: P must be positive");
  const auto coeffs = reduce_coeffs_wrap128(params.phi);
  const TorusPoint a1 = params.alpha1, a2 = params.alpha2;
  return blocked_sum(params.P, [&](std::uint64_t lo, std::uint64_t hi) {
    ComplexAccumulator acc;
    for (std::uint64_t x = lo; x <= hi; ++x) {
      u128 n = eval_wrap128(coeffs, x);
      acc.add(e_frac(a1.times(n + x) + a2.times(n)));
    }
    return acc.value();
  });
}

std::complex<double> weyl_g(const IntPolynomial& phi, std::uint64_t P,
                            TorusPoint alpha, TorusPoint gamma) {
  require(P >= 1, "weyl_g: P must be positive");
  const auto coeffs = reduce_coeffs_wrap128(phi);
  return blocked_sum(P, [&](std::uint64_t lo, std::uint64_t hi) {
    ComplexAccumulator acc;
    for (std::uint64_t x = lo; x <= hi; ++x) {
      u128 n = eval_wrap128(coeffs, x);
      acc.add(e_frac(alpha.times(u128(x)) + gamma.times(n)));
    }
    return acc.value();
  });
}

std::complex<double> weyl_g_decomposed(const IntPolynomial& phi, std::uint64_t P,
                                       std::uint64_t p, std::uint64_t a,
                                       std::uint64_t c, double beta) {
  require(P >= 1, "weyl_g_decomposed: P must be positive");
  require(p >= 2, "weyl_g_decomposed: p must be at least 2");
  require(std::fabs(beta) <= 0.5 / static_cast<double>(p),
          "weyl_g_decomposed: |beta| must not exceed 1/(2p)");
  a %= p;
  c %= p;

  // psi(x) = a x + c phi(x); its residue mod p depends on x mod p only.
  std::vector<std::uint64_t> psi = reduce_coeffs(phi, p);
  for (auto& cf : psi) cf = mulmod(c, cf, p);
  psi[1] = (psi[1] + a) % p;
  std::vector<std::uint64_t> residue(p);
  for (std::uint64_t r = 0; r < p; ++r) residue[r] = eval_reduced(psi, r, p);

  std::vector<std::complex<double>> roots(p);
  for (std::uint64_t j = 0; j < p; ++j) {
    roots[j] = e_frac(static_cast<double>(j) / static_cast<double>(p));
  }

  return blocked_sum(P, [&](std::uint64_t lo, std::uint64_t hi) {
    ComplexAccumulator acc;
    std::uint64_t xm = lo % p;
    for (std::uint64_t x = lo; x <= hi; ++x) {
      acc.add(roots[residue[xm]] * e_frac(beta * static_cast<double>(x)));
      if (++xm == p) xm = 0;
    }
    return acc.value();
  });
}

std::complex<double> integral_I(double P, double beta) {
  if (beta == 0.0) return {P, 0.0};
  double amplitude = std::sin(kPi * beta * P) / (kPi * beta);
  return amplitude * e_frac(beta * P / 2.0);
}

LemmaOneReport lemma_one_check(const IntPolynomial& phi, std::uint64_t P,
                               std::uint64_t p, std::uint64_t a,
                               std::uint64_t c, double beta) {
  require(p >= 3 && is_prime(p), "lemma_one_check: p must be an odd prime");
  require(c % p != 0, "lemma_one_check: p must not divide c");
  a %= p;
  c %= p;
  LemmaOneReport rep;
  rep.p = p;
  rep.a = a;
  rep.c = c;
  rep.beta = beta;
  rep.g_value = weyl_g_decomposed(phi, P, p, a, c, beta);
  std::complex<double> s = complete_sum(phi, p, a, c).value;
  rep.main_term = s * integral_I(static_cast<double>(P), beta) / static_cast<double>(p);
  rep.error = std::abs(rep.g_value - rep.main_term);
  rep.normalized_error =
      rep.error / (std::sqrt(static_cast<double>(p)) * std::log(static_cast<double>(p)));
  return rep;
}

Lemma1Sweep lemma_one_sweep(const IntPolynomial& phi, std::uint64_t p_lo,
                            std::uint64_t p_hi, int trials_per_prime,
                            double ceiling, std::uint64_t seed) {
  std::vector<std::uint64_t> ps =
      p_hi > p_lo + 1 ? primes_in_range(p_lo + 1, p_hi - 1) : std::vector<std::uint64_t>{};
  std::erase_if(ps, [&](std::uint64_t p) {
    return p < 3 || mod_u64(phi.leading_coefficient(), p) == 0;
  });

  Lemma1Sweep sweep;
  sweep.ceiling = ceiling;
  for (std::uint64_t p : ps) {
    // splitmix-style stream, one per prime: draws are scheduling-independent
    std::uint64_t state = seed ^ (p * 0x9e3779b97f4a7c15ULL);
    auto next = [&state]() {
      state += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = state;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      return z ^ (z >> 31);
    };
    for (int t = 0; t < trials_per_prime; ++t) {
      std::uint64_t a = next() % p;
      std::uint64_t c = 1 + next() % (p - 1);
      double u = static_cast<double>(next() >> 11) * 0x1p-53;  // [0,1)
      double beta = (2.0 * u - 1.0) * 0.5 / static_cast<double>(p);
      for (std::uint64_t P : {p * p, 2 * p * p}) {
        LemmaOneReport rep = lemma_one_check(phi, P, p, a, c, beta);
        Lemma1Case cs{p, a, c, beta, P, rep.normalized_error};
        ++sweep.cases;
        if (rep.normalized_error > sweep.worst.normalized_error) sweep.worst = cs;
        if (rep.normalized_error > ceiling) {
          ++sweep.exceedances;
          sweep.over.push_back(cs);
        }
      }
    }
  }
  return sweep;
}

}  // namespace weyl
