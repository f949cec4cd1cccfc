#include "weyl/diophantine.hpp"

#include <cmath>

#include "weyl/primality.hpp"

namespace weyl {

namespace {

const bigint kOne128 = bigint(1) << 128;

// beta = alpha - a/p as a double, from the exact fixed-point numerator.
double beta_of(TorusPoint alpha, std::uint64_t a, std::uint64_t p) {
  bigint num = to_bigint(alpha.raw()) * p - (bigint(a) << 128);
  long double v = num.convert_to<long double>() / static_cast<long double>(p);
  return static_cast<double>(std::ldexp(v, -128));
}

// Exact test of |alpha - a/p| < 1/p^2 with a = nearest integer to p*alpha;
// fills *out on success.
bool scan_hit(TorusPoint alpha, std::uint64_t p, PrimeApprox* out) {
  u128 fp = alpha.times(u128(p)).raw();  // frac(p*alpha), exact
  u128 dist = fp <= (u128(1) << 127) ? fp : static_cast<u128>(~fp + 1);
  // dist/2^128 < 1/p  <=>  dist*p < 2^128  <=>  dist <= floor((2^128-1)/p)
  if (dist > static_cast<u128>(~u128(0)) / p) return false;
  bigint prod = to_bigint(alpha.raw()) * p;
  std::uint64_t a = (prod >> 128).convert_to<std::uint64_t>();
  if (fp > (u128(1) << 127)) ++a;  // round the fractional part
  *out = {a, p, beta_of(alpha, a, p)};
  return true;
}

}  // namespace

std::vector<bigint> continued_fraction(TorusPoint alpha, std::size_t max_terms) {
  std::vector<bigint> quotients{0};
  bigint num = to_bigint(alpha.raw());
  bigint den = kOne128;
  while (num != 0 && quotients.size() < max_terms) {
    quotients.push_back(den / num);
    bigint rem = den % num;
    den = num;
    num = rem;
  }
  return quotients;
}

std::vector<Convergent> convergents(TorusPoint alpha, std::size_t max_terms) {
  std::vector<Convergent> out;
  bigint hm1 = 1, hm2 = 0;  // numerator recurrence state
  bigint qm1 = 0, qm2 = 1;  // denominator recurrence state
  for (const bigint& aq : continued_fraction(alpha, max_terms)) {
    bigint h = aq * hm1 + hm2;
    bigint q = aq * qm1 + qm2;
    out.push_back({h, q});
    hm2 = hm1;
    hm1 = h;
    qm2 = qm1;
    qm1 = q;
  }
  if (out.size() >= 2 && out[1].denominator == 1) out.erase(out.begin());
  return out;
}

std::vector<PrimeApprox> prime_denominator_approx(TorusPoint alpha,
                                                  std::uint64_t p_min,
                                                  std::uint64_t p_max,
                                                  ApproxStrategy strategy) {
  require(p_min >= 2, "prime_denominator_approx: p_min must be at least 2");
  require(p_min <= p_max, "prime_denominator_approx: p_min must not exceed p_max");
  require(p_max <= (std::uint64_t(1) << 63),
          "prime_denominator_approx: p_max must not exceed 2^63");

  std::vector<PrimeApprox> hits;
  if (strategy == ApproxStrategy::kPrimeScan) {
    for (std::uint64_t p = p_min; p <= p_max; ++p) {
      if (!is_prime(p)) continue;
      PrimeApprox approx;
      if (scan_hit(alpha, p, &approx)) hits.push_back(approx);
    }
    return hits;
  }

  // Convergent filter: walk the expansion until denominators leave the
  // range, keep prime denominators. |alpha - h/q| < 1/q^2 holds for every
  // convergent of the fixed-point rational, including the terminal exact one.
  for (const Convergent& cv : convergents(alpha, 200)) {
    if (cv.denominator > p_max) break;
    if (cv.denominator < p_min) continue;
    std::uint64_t p = cv.denominator.convert_to<std::uint64_t>();
    if (!is_prime(p)) continue;
    std::uint64_t a = cv.numerator.convert_to<std::uint64_t>();
    hits.push_back({a, p, beta_of(alpha, a, p)});
  }
  return hits;
}

}  // namespace weyl
