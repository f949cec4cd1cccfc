#include <algorithm>
#include <numeric>

#include <doctest.h>

#include "weyl/diophantine.hpp"
#include "test_support.hpp"

using namespace weyl;

namespace {

const bigint kOne128 = bigint(1) << 128;

// Exact |alpha - a/q| as the pair (|F q - a 2^128|, q 2^128); compare by
// cross multiplication.
bigint abs_num(TorusPoint alpha, const bigint& a, const bigint& q) {
  return abs(to_bigint(alpha.raw()) * q - (a << 128));
}

bool closer_than(TorusPoint alpha, const bigint& a1, const bigint& q1,
                 const bigint& a2, const bigint& q2) {
  // |alpha - a1/q1| < |alpha - a2/q2|
  return abs_num(alpha, a1, q1) * q2 < abs_num(alpha, a2, q2) * q1;
}

std::vector<std::uint64_t> denominators(const std::vector<PrimeApprox>& v) {
  std::vector<std::uint64_t> out;
  for (const auto& x : v) out.push_back(x.p);
  return out;
}

}  // namespace

TEST_CASE("continued_fraction: rational and quadratic irrationals") {
  auto half = continued_fraction(TorusPoint::from_ratio(1, 2), 50);
  CHECK(half == std::vector<bigint>{0, 2});

  auto rt2 = continued_fraction(TorusPoint::sqrt2_minus_one(), 40);
  REQUIRE(rt2.size() == 40);
  CHECK(rt2[0] == 0);
  for (std::size_t i = 1; i < rt2.size(); ++i) CHECK(rt2[i] == 2);

  auto gold = continued_fraction(TorusPoint::golden(), 60);
  REQUIRE(gold.size() == 60);
  CHECK(gold[0] == 0);
  for (std::size_t i = 1; i < gold.size(); ++i) CHECK(gold[i] == 1);

  CHECK(continued_fraction(TorusPoint{}, 10) == std::vector<bigint>{0});
}

TEST_CASE("convergents: Pell denominators and approximation quality") {
  TorusPoint alpha = TorusPoint::sqrt2_minus_one();
  auto cs = convergents(alpha, 14);
  std::vector<std::uint64_t> want_q{1, 2, 5, 12, 29, 70, 169, 408, 985, 2378, 5741, 13860};
  REQUIRE(cs.size() >= want_q.size());
  for (std::size_t i = 0; i < want_q.size(); ++i) {
    CHECK(cs[i].denominator == want_q[i]);
    // Pell recurrence q_{n+1} = 2 q_n + q_{n-1}
    if (i >= 2) CHECK(cs[i].denominator == 2 * cs[i - 1].denominator + cs[i - 2].denominator);
  }
  for (const auto& cv : cs) {
    CHECK(boost::multiprecision::gcd(abs(cv.numerator), cv.denominator) == 1);
    // |alpha - h/q| < 1/q^2, exactly: |F q - h 2^128| q < 2^128
    CHECK(abs_num(alpha, cv.numerator, cv.denominator) * cv.denominator < kOne128);
  }
  for (std::size_t i = 1; i < cs.size(); ++i) {
    CHECK(cs[i].denominator > cs[i - 1].denominator);
  }
}

TEST_CASE("convergents: golden ratio keeps strictly increasing denominators") {
  auto cs = convergents(TorusPoint::golden(), 20);
  std::vector<std::uint64_t> want_q{1, 2, 3, 5, 8, 13, 21};
  REQUIRE(cs.size() >= want_q.size());
  for (std::size_t i = 0; i < want_q.size(); ++i) CHECK(cs[i].denominator == want_q[i]);
  for (std::size_t i = 1; i < cs.size(); ++i) CHECK(cs[i].denominator > cs[i - 1].denominator);
}

TEST_CASE("convergents: rational input terminates with the exact value") {
  auto cs = convergents(TorusPoint::from_ratio(1, 2), 50);
  REQUIRE(!cs.empty());
  CHECK(cs.back().numerator == 1);
  CHECK(cs.back().denominator == 2);
}

TEST_CASE("convergents are best approximations among smaller denominators") {
  TorusPoint alpha = TorusPoint::sqrt2_minus_one();
  for (const auto& cv : convergents(alpha, 12)) {
    if (cv.denominator > 500) break;
    if (cv.denominator == 1) continue;
    for (bigint q = 1; q < cv.denominator; ++q) {
      // nearest numerator for denominator q
      bigint a = (to_bigint(alpha.raw()) * q + (kOne128 >> 1)) >> 128;
      CHECK(closer_than(alpha, cv.numerator, cv.denominator, a, q));
    }
  }
}

TEST_CASE("prime_denominator_approx: sqrt(2)-1 scan up to 1e4") {
  TorusPoint alpha = TorusPoint::sqrt2_minus_one();
  auto hits = prime_denominator_approx(alpha, 2, 10000, ApproxStrategy::kPrimeScan);
  CHECK(denominators(hits) ==
        std::vector<std::uint64_t>{2, 3, 5, 7, 17, 29, 41, 239, 577, 5741});
  std::vector<std::uint64_t> want_a{1, 1, 2, 3, 7, 12, 17, 99, 239, 2378};
  REQUIRE(hits.size() == want_a.size());
  for (std::size_t i = 0; i < hits.size(); ++i) {
    CHECK(hits[i].a == want_a[i]);
    // exact |beta| < 1/p^2  <=>  |F p - a 2^128| p < 2^128
    CHECK(abs_num(alpha, hits[i].a, hits[i].p) * hits[i].p < kOne128);
    CHECK(std::abs(hits[i].beta) < 1.0 / (double(hits[i].p) * double(hits[i].p)));
    CHECK(hits[i].a % hits[i].p != 0);
  }
}

TEST_CASE("prime_denominator_approx: golden ratio scan") {
  auto hits = prime_denominator_approx(TorusPoint::golden(), 2, 10000,
                                       ApproxStrategy::kPrimeScan);
  CHECK(denominators(hits) == std::vector<std::uint64_t>{2, 3, 5, 13, 89, 233, 1597});
}

TEST_CASE("prime_denominator_approx: rational alpha degenerates") {
  auto hits = prime_denominator_approx(TorusPoint::from_ratio(1, 3), 2, 100,
                                       ApproxStrategy::kPrimeScan);
  CHECK(denominators(hits) == std::vector<std::uint64_t>{2, 3});
  auto none = prime_denominator_approx(TorusPoint::from_ratio(1, 2), 3, 5000,
                                       ApproxStrategy::kPrimeScan);
  CHECK(none.empty());  // empty is a result, not an error
}

TEST_CASE("prime_denominator_approx: convergent filter is a subset of the scan") {
  TorusPoint alpha = TorusPoint::sqrt2_minus_one();
  auto filt = prime_denominator_approx(alpha, 2, 10000, ApproxStrategy::kConvergentFilter);
  CHECK(denominators(filt) == std::vector<std::uint64_t>{2, 5, 29, 5741});

  test::Rng rng(47);
  for (int i = 0; i < 20; ++i) {
    TorusPoint a = TorusPoint::from_raw(rng.raw128());
    auto scan = prime_denominator_approx(a, 2, 2000, ApproxStrategy::kPrimeScan);
    auto sub = prime_denominator_approx(a, 2, 2000, ApproxStrategy::kConvergentFilter);
    for (const auto& s : sub) {
      auto it = std::find_if(scan.begin(), scan.end(),
                             [&](const PrimeApprox& x) { return x.p == s.p; });
      REQUIRE(it != scan.end());
      CHECK(it->a == s.a);
    }
  }
}

TEST_CASE("prime_denominator_approx: argument validation") {
  TorusPoint alpha = TorusPoint::sqrt2_minus_one();
  CHECK_THROWS_AS(prime_denominator_approx(alpha, 1, 10, ApproxStrategy::kPrimeScan),
                  std::invalid_argument);
  CHECK_THROWS_AS(prime_denominator_approx(alpha, 10, 5, ApproxStrategy::kPrimeScan),
                  std::invalid_argument);
}
