#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "weyl/diophantine.hpp"
#include "weyl/polynomial.hpp"
#include "weyl/torus.hpp"

namespace weyl {

struct WitnessConfig {
  IntPolynomial phi;
  double tau = 0;          // target exponent is 3/4 - tau; 0 < tau < 1/4
  std::uint64_t p_min = 0; // must exceed (2k)^4
  std::uint64_t p_max = 0;
  TorusPoint alpha2;

  void validate() const;
};

// One full construction: from a prime-denominator approximation of alpha2
// to the evaluated |f| against its target P^(3/4 - tau).
struct WitnessReport {
  std::uint64_t p = 0;
  std::uint64_t a2 = 0;
  double beta2 = 0;
  std::uint64_t a1 = 0;
  double beta1 = 0;   // always -beta2: the betas cancel along the slice
  std::uint64_t P = 0;  // floor(p^(2/(1+tau)))
  double f_abs = 0;
  double target = 0;  // P^(3/4 - tau)
  double ratio = 0;   // f_abs / target
  double S_abs = 0;   // |S(p; a1, a1+a2)| from the Lemma-2 search
  double exponent = 0;  // log f_abs / log P
};

// Builds alpha1 = a1/p - beta2 from the approximation and evaluates
// f(alpha1, alpha2) = g(alpha1, (a1+a2)/p) through the decomposed path
// (the slice phase gamma is exactly rational since beta1 + beta2 = 0).
WitnessReport construct_witness(const WitnessConfig& config, const PrimeApprox& approx);

struct ExponentSweep {
  std::vector<WitnessReport> reports;  // sorted by P
  double fitted_slope = 0;             // least squares of log f_abs on log P
  bool slope_valid = false;            // needs at least two reports
  std::uint64_t rejected = 0;          // approximations with p | a2 or p | lc(phi)
  std::string diagnostic;              // set when the sweep is empty
};

// Scans [p_min, p_max] for prime-denominator approximations of alpha2 and
// constructs a witness for each admissible one.
ExponentSweep exponent_sweep(const WitnessConfig& config,
                             ApproxStrategy strategy = ApproxStrategy::kPrimeScan);

}  // namespace weyl
