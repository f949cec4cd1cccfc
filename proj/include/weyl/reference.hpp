#pragma once

#include <complex>
#include <cstdint>

#include "weyl/complete_sums.hpp"
#include "weyl/polynomial.hpp"
#include "weyl/torus.hpp"

namespace weyl::ref {

// Serial reference implementations: direct summation in long double with
// arbitrary-precision phase arithmetic and no compensation tricks. They are
// deliberately independent of the production kernels (no wraparound Horner,
// no roots-of-unity tables, no blocking) and exist as oracles for the test
// suites and as the baseline for the benchmark target. Far too slow for
// production sizes.

std::complex<long double> weyl_f(const IntPolynomial& phi, std::uint64_t P,
                                 TorusPoint alpha1, TorusPoint alpha2);

std::complex<long double> weyl_g(const IntPolynomial& phi, std::uint64_t P,
                                 TorusPoint alpha, TorusPoint gamma);

std::complex<long double> weyl_g_decomposed(const IntPolynomial& phi, std::uint64_t P,
                                            std::uint64_t p, std::uint64_t a,
                                            std::uint64_t c, double beta);

std::complex<long double> complete_sum(const IntPolynomial& phi, std::uint64_t q,
                                       std::uint64_t a, std::uint64_t c);

// Literal (m,h) double loop over [1,p]^2 using the untransformed condition
// phi(m+h) - phi(m) + h == 0 mod p (and phi'(m) + 1 == 0 on the h = p row),
// with no polynomial division anywhere.
CurveCount curve_char_sum(const IntPolynomial& phi, std::uint64_t p,
                          std::uint64_t c, bool include_h_zero);

bool is_prime_trial(std::uint64_t n);

}  // namespace weyl::ref
