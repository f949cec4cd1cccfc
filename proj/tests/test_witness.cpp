#include <cmath>
#include <cstring>

#include <doctest.h>

#include "weyl/complete_sums.hpp"
#include "weyl/weyl_sums.hpp"
#include "weyl/witness.hpp"
#include "test_support.hpp"

using namespace weyl;

namespace {

const IntPolynomial kSquare = IntPolynomial::monomial(2);

WitnessConfig square_config(std::uint64_t p_min = 257, std::uint64_t p_max = 10000) {
  return {kSquare, 0.1, p_min, p_max, TorusPoint::sqrt2_minus_one()};
}

PrimeApprox approx_at(const WitnessConfig& cfg, std::uint64_t p) {
  auto hits = prime_denominator_approx(cfg.alpha2, p, p, ApproxStrategy::kPrimeScan);
  REQUIRE(hits.size() == 1);
  return hits[0];
}

}  // namespace

TEST_CASE("WitnessConfig validation") {
  CHECK_NOTHROW(square_config().validate());
  WitnessConfig bad_tau = square_config();
  bad_tau.tau = 0.3;
  CHECK_THROWS_AS(bad_tau.validate(), std::invalid_argument);
  bad_tau.tau = 0.0;
  CHECK_THROWS_AS(bad_tau.validate(), std::invalid_argument);
  WitnessConfig low_p = square_config(256);
  CHECK_THROWS_AS(low_p.validate(), std::invalid_argument);
}

TEST_CASE("construct_witness at the Pell prime 5741") {
  WitnessConfig cfg = square_config();
  WitnessReport rep = construct_witness(cfg, approx_at(cfg, 5741));
  CHECK(rep.p == 5741);
  CHECK(rep.a2 == 2378);
  CHECK(rep.a1 == 1);
  CHECK(rep.P == 6831606);
  CHECK(rep.beta1 == -rep.beta2);
  CHECK(rep.S_abs == doctest::Approx(75.769386958).epsilon(1e-6));
  CHECK(rep.S_abs >= std::sqrt(5741.0) / 3.0);
  CHECK(rep.ratio >= 1.0);
  CHECK(rep.exponent == doctest::Approx(0.7244).epsilon(2e-3));
  CHECK(rep.target == doctest::Approx(std::pow(6831606.0, 0.65)).epsilon(1e-12));
  CHECK((rep.a1 + rep.a2) % rep.p != 0);
}

TEST_CASE("witness slice is exactly rational in fixed point") {
  WitnessConfig cfg = square_config();
  WitnessReport rep = construct_witness(cfg, approx_at(cfg, 577));
  std::uint64_t c_slice = (rep.a1 + rep.a2) % rep.p;

  // alpha1 := (a1+a2)/p - alpha2 makes the betas cancel; the fixed-point
  // sum then lands on the rational slice phase bit for bit.
  TorusPoint gamma = TorusPoint::from_ratio(bigint(rep.a1) + rep.a2, rep.p);
  TorusPoint alpha1 = gamma - cfg.alpha2;
  CHECK(alpha1 + cfg.alpha2 == gamma);

  // Cross-route consistency on a short stretch of the same slice.
  std::complex<double> generic = weyl_f({cfg.phi, 2000, alpha1, cfg.alpha2});
  std::complex<double> decomposed =
      weyl_g_decomposed(cfg.phi, 2000, rep.p, rep.a1, c_slice, rep.beta1);
  CHECK(std::abs(generic - decomposed) <= 1e-6);
}

TEST_CASE("construct_witness on an exactly rational alpha2") {
  // beta2 = 0: f collapses to p^-1 S I(0) up to the lemma error.
  WitnessConfig cfg{kSquare, 0.1, 257, 10000, TorusPoint::from_ratio(109, 263)};
  PrimeApprox approx{109, 263, 0.0};
  WitnessReport rep = construct_witness(cfg, approx);
  CHECK(rep.beta1 == 0.0);
  double main = rep.S_abs * static_cast<double>(rep.P) / 263.0;
  double slack = 20.0 * std::sqrt(263.0) * std::log(263.0);
  CHECK(rep.f_abs >= main - slack);
  CHECK(rep.f_abs <= main + slack);
}

TEST_CASE("construct_witness rejects bad inputs") {
  WitnessConfig cfg = square_config();
  CHECK_THROWS_AS(construct_witness(cfg, PrimeApprox{104, 251, 1e-9}),
                  std::invalid_argument);  // 251 <= (2k)^4
  CHECK_THROWS_AS(construct_witness(cfg, PrimeApprox{0, 263, 1e-9}),
                  std::invalid_argument);  // p | a2
  CHECK_THROWS_AS(construct_witness(cfg, PrimeApprox{263, 263, 1e-9}),
                  std::invalid_argument);  // p | a2
  CHECK_THROWS_AS(construct_witness(cfg, PrimeApprox{109, 263, 1e-3}),
                  std::invalid_argument);  // |beta| > p^-2
  CHECK_THROWS_AS(construct_witness(cfg, PrimeApprox{100, 264, 1e-9}),
                  std::invalid_argument);  // composite
}

TEST_CASE("exponent_sweep: flagship k = 2 run") {
  ExponentSweep sweep = exponent_sweep(square_config());
  REQUIRE(sweep.reports.size() == 2);
  CHECK(sweep.reports[0].p == 577);
  CHECK(sweep.reports[1].p == 5741);
  for (const auto& r : sweep.reports) {
    CHECK(r.P >= 100000);
    CHECK(r.exponent >= 0.60);
    // Lower-bound chain: |f| >= p^-1 |S| |I(beta1)| - C sqrt(p) log p with
    // the suite ceiling C = 20 standing in for the unspecified constant.
    double main = r.S_abs * std::abs(integral_I(static_cast<double>(r.P), r.beta1)) /
                  static_cast<double>(r.p);
    double slack = 20.0 * std::sqrt(static_cast<double>(r.p)) *
                   std::log(static_cast<double>(r.p));
    CHECK(r.f_abs >= main - slack);
  }
  CHECK(sweep.reports.back().ratio >= 1.0);
  CHECK(sweep.slope_valid);
  CHECK(sweep.fitted_slope >= 0.6);
  CHECK(sweep.fitted_slope <= 0.9);
  CHECK(sweep.rejected == 0);
  CHECK(sweep.diagnostic.empty());

  // Determinism: identical config gives bitwise-identical reports.
  ExponentSweep again = exponent_sweep(square_config());
  REQUIRE(again.reports.size() == sweep.reports.size());
  CHECK(std::memcmp(again.reports.data(), sweep.reports.data(),
                    sweep.reports.size() * sizeof(WitnessReport)) == 0);
}

TEST_CASE("exponent_sweep: degenerate and empty cases") {
  WitnessConfig rational = square_config(257, 2000);
  rational.alpha2 = TorusPoint::from_ratio(1, 2);
  ExponentSweep none = exponent_sweep(rational);
  CHECK(none.reports.empty());
  CHECK_FALSE(none.diagnostic.empty());

  WitnessConfig inverted = square_config(257, 100);
  ExponentSweep empty = exponent_sweep(inverted);
  CHECK(empty.reports.empty());
  CHECK(empty.diagnostic == "empty prime range");

  // alpha2 near zero: every approximation has a2 = 0 and is rejected.
  WitnessConfig tiny = square_config(257, 316);
  tiny.alpha2 = TorusPoint::parse_decimal("0.00001");
  ExponentSweep rejected = exponent_sweep(tiny);
  CHECK(rejected.reports.empty());
  CHECK(rejected.rejected > 0);
  CHECK(rejected.diagnostic == "no admissible approximations in range (all rejected)");
}
