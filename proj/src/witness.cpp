#include "weyl/witness.hpp"

#include <algorithm>
#include <cmath>

#include "weyl/complete_sums.hpp"
#include "weyl/modular.hpp"
#include "weyl/primality.hpp"
#include "weyl/weyl_sums.hpp"

namespace weyl {

namespace {

std::uint64_t lemma2_floor(const IntPolynomial& phi) {
  std::uint64_t k = phi.degree();
  std::uint64_t t = 2 * k;
  return t * t * t * t;
}

}  // namespace

void WitnessConfig::validate() const {
  require(tau > 0 && tau < 0.25, "WitnessConfig: tau must lie in (0, 1/4)");
  require(p_min > lemma2_floor(phi), "WitnessConfig: p_min must exceed (2k)^4");
}

WitnessReport construct_witness(const WitnessConfig& config, const PrimeApprox& approx) {
  config.validate();
  const IntPolynomial& phi = config.phi;
  const std::uint64_t p = approx.p;
  require(is_prime(p), "construct_witness: p must be prime");
  require(p > lemma2_floor(phi), "construct_witness: p must exceed (2k)^4");
  require(mod_u64(phi.leading_coefficient(), p) != 0,
          "construct_witness: p must not divide lc(phi)");
  require(approx.a % p != 0, "construct_witness: p must not divide a2");
  double inv_p2 = 1.0 / (static_cast<double>(p) * static_cast<double>(p));
  require(std::fabs(approx.beta) <= inv_p2,
          "construct_witness: approximation must satisfy |beta| <= p^-2");

  WitnessReport rep;
  rep.p = p;
  rep.a2 = approx.a % p;  // S depends on residues only
  rep.beta2 = approx.beta;
  rep.beta1 = -approx.beta;
  rep.P = static_cast<std::uint64_t>(
      std::floor(std::pow(static_cast<long double>(p),
                          2.0L / (1.0L + static_cast<long double>(config.tau)))));

  LargeASearch search = find_large_a(phi, p, rep.a2);
  if (search.below_threshold) {
    // Lemma 2 rules this out whenever the preconditions hold.
    throw std::runtime_error(
        "construct_witness: no a with |S(p;a,a+c)| >= sqrt(p)/3 at p = " +
        std::to_string(p) + ", c = " + std::to_string(rep.a2));
  }
  rep.a1 = search.a;
  rep.S_abs = search.magnitude;

  // beta1 + beta2 = 0, so gamma = alpha1 + alpha2 = (a1 + a2)/p exactly.
  std::uint64_t c_slice = (rep.a1 + rep.a2) % p;
  std::complex<double> f =
      weyl_g_decomposed(phi, rep.P, p, rep.a1 % p, c_slice, rep.beta1);
  rep.f_abs = std::abs(f);
  rep.target = static_cast<double>(
      std::pow(static_cast<long double>(rep.P), 0.75L - static_cast<long double>(config.tau)));
  rep.ratio = rep.f_abs / rep.target;
  rep.exponent = std::log(rep.f_abs) / std::log(static_cast<double>(rep.P));

  // |beta1| P <= P^-tau follows from |beta| <= p^-2 and P^(1+tau) <= p^2.
  double drift = std::fabs(rep.beta1) * static_cast<double>(rep.P);
  if (drift > std::pow(static_cast<double>(rep.P), -config.tau) * (1.0 + 1e-9)) {
    throw std::runtime_error("construct_witness: |beta1| P exceeds P^-tau");
  }
  return rep;
}

ExponentSweep exponent_sweep(const WitnessConfig& config, ApproxStrategy strategy) {
  config.validate();
  ExponentSweep sweep;
  if (config.p_max < config.p_min) {
    sweep.diagnostic = "empty prime range";
    return sweep;
  }

  auto approxes =
      prime_denominator_approx(config.alpha2, config.p_min, config.p_max, strategy);
  for (const PrimeApprox& approx : approxes) {
    if (approx.a % approx.p == 0 ||
        mod_u64(config.phi.leading_coefficient(), approx.p) == 0) {
      ++sweep.rejected;
      continue;
    }
    sweep.reports.push_back(construct_witness(config, approx));
  }
  std::sort(sweep.reports.begin(), sweep.reports.end(),
            [](const WitnessReport& x, const WitnessReport& y) { return x.P < y.P; });

  if (sweep.reports.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : sweep.reports) {
      double x = std::log(static_cast<double>(r.P));
      double y = std::log(r.f_abs);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    double n = static_cast<double>(sweep.reports.size());
    sweep.fitted_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    sweep.slope_valid = true;
  }
  if (sweep.reports.empty()) {
    sweep.diagnostic = sweep.rejected
                           ? "no admissible approximations in range (all rejected)"
                           : "no prime-denominator approximations in range";
  }
  return sweep;
}

}  // namespace weyl
