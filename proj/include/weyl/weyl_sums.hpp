#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "weyl/common.hpp"
#include "weyl/polynomial.hpp"
#include "weyl/torus.hpp"

namespace weyl {

// f(alpha1, alpha2) = sum_{x=1}^{P} e(alpha1 (phi(x)+x) + alpha2 phi(x)).
struct WeylParams {
  IntPolynomial phi;
  std::uint64_t P = 0;  // summation length, x runs over 1..P
  TorusPoint alpha1, alpha2;
};

// Phases are assembled in 128-bit fixed point (exact on representations)
// and accumulated with compensation; the x-range is split into fixed-size
// blocks summed in parallel and merged in ascending order, so results do
// not depend on the thread count.
std::complex<double> weyl_f(const WeylParams& params);

// g(alpha, gamma) = sum_{x=1}^{P} e(alpha x + gamma phi(x)).
std::complex<double> weyl_g(const IntPolynomial& phi, std::uint64_t P,
                            TorusPoint alpha, TorusPoint gamma);

// g(a/p + beta, c/p) evaluated through exact residues mod p plus the small
// linear phase e(beta x); no large-phase cancellation. |beta| <= 1/(2p).
std::complex<double> weyl_g_decomposed(const IntPolynomial& phi, std::uint64_t P,
                                       std::uint64_t p, std::uint64_t a,
                                       std::uint64_t c, double beta);

// I(beta) = integral_0^P e(beta x) dx: P at beta = 0, otherwise the closed
// form sin(pi beta P)/(pi beta) * e(beta P / 2).
std::complex<double> integral_I(double P, double beta);

// Empirical content of the rational approximation lemma:
// g(a/p + beta, c/p) = p^-1 S(p;a,c) I(beta) + error, with the error
// normalized by sqrt(p) log p.
struct LemmaOneReport {
  std::uint64_t p = 0, a = 0, c = 0;
  double beta = 0;
  std::complex<double> g_value, main_term;
  double error = 0;
  double normalized_error = 0;
};

LemmaOneReport lemma_one_check(const IntPolynomial& phi, std::uint64_t P,
                               std::uint64_t p, std::uint64_t a,
                               std::uint64_t c, double beta);

// Random (a, c, beta) sweep of the lemma over primes in the open interval
// (p_lo, p_hi), with P in {p^2, 2 p^2} per draw. Draws are seeded per prime,
// so the outcome is independent of scheduling.
struct Lemma1Case {
  std::uint64_t p = 0, a = 0, c = 0;
  double beta = 0;
  std::uint64_t P = 0;
  double normalized_error = 0;
};

struct Lemma1Sweep {
  std::uint64_t cases = 0;
  std::uint64_t exceedances = 0;
  double ceiling = 0;
  Lemma1Case worst;
  std::vector<Lemma1Case> over;  // every case above the ceiling
};

Lemma1Sweep lemma_one_sweep(const IntPolynomial& phi, std::uint64_t p_lo,
                            std::uint64_t p_hi, int trials_per_prime,
                            double ceiling, std::uint64_t seed);

}  // namespace weyl
