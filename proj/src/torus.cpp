#include "weyl/torus.hpp"

#include <cctype>
#include <cmath>

namespace weyl {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Rotate (c, s) by q quarter turns, q in [0, 3].
std::complex<double> rotate_quarters(double c, double s, int q) {
  switch (q) {
    case 1: return {-s, c};
    case 2: return {-c, -s};
    case 3: return {s, -c};
    default: return {c, s};
  }
}

}  // namespace

TorusPoint TorusPoint::from_double(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r = 0.0;  // floor quirk for x just below an integer
  long double scaled = static_cast<long double>(r) * 0x1p128L;
  u128 f = static_cast<u128>(scaled);
  return TorusPoint(f);
}

TorusPoint TorusPoint::from_ratio(const bigint& num, const bigint& den) {
  require(den > 0, "from_ratio: denominator must be positive");
  bigint r = num % den;
  if (r < 0) r += den;
  bigint scaled = (r << 128) + den / 2;
  return TorusPoint(low_u128(scaled / den));
}

TorusPoint TorusPoint::parse_decimal(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  bigint int_part = 0, frac_digits = 0, frac_scale = 1;
  bool any = false;
  for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
    int_part = int_part * 10 + (text[i] - '0');
    any = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      frac_digits = frac_digits * 10 + (text[i] - '0');
      frac_scale *= 10;
      any = true;
    }
  }
  require(any && i == text.size(),
          "parse_decimal: expected a plain decimal, got '" + std::string(text) + "'");
  TorusPoint t = from_ratio(frac_digits, frac_scale);
  return negative ? -t : t;
}

TorusPoint TorusPoint::sqrt2_minus_one() {
  // floor(sqrt(2) * 2^128) - 2^128 = floor((sqrt(2)-1) * 2^128)
  bigint f = boost::multiprecision::sqrt(bigint(2) << 256) - (bigint(1) << 128);
  return TorusPoint(low_u128(f));
}

TorusPoint TorusPoint::golden() {
  bigint f = (boost::multiprecision::sqrt(bigint(5) << 256) - (bigint(1) << 128)) >> 1;
  return TorusPoint(low_u128(f));
}

double TorusPoint::to_double() const {
  return static_cast<double>(static_cast<long double>(frac_) * 0x1p-128L);
}

double TorusPoint::dist_to_int() const {
  u128 d = frac_ <= (u128(1) << 127) ? frac_ : static_cast<u128>(~frac_ + 1);
  return static_cast<double>(static_cast<long double>(d) * 0x1p-128L);
}

double dist_to_int(double x) {
  double d = x - std::nearbyint(x);
  return std::fabs(d);
}

std::complex<double> e_frac(double turns) {
  double r = turns - std::nearbyint(turns);       // [-1/2, 1/2]
  int q = static_cast<int>(std::lrint(4.0 * r));  // nearest quarter, -2..2
  double x = r - 0.25 * q;                        // [-1/8, 1/8]
  double c = std::cos(kTwoPi * x);
  double s = std::sin(kTwoPi * x);
  return rotate_quarters(c, s, (q + 4) & 3);
}

std::complex<double> e_frac(TorusPoint t) {
  u128 f = t.raw();
  // Nearest quarter turn; the addition may wrap, which is the correct
  // torus behaviour (points just below 1 reduce to quarter 0).
  int q = static_cast<int>(static_cast<u128>(f + (u128(1) << 125)) >> 126) & 3;
  i128 resid = static_cast<i128>(f - (u128(q) << 126));  // |resid| <= 2^125
  double x = static_cast<double>(static_cast<long double>(resid) * 0x1p-128L);
  double c = std::cos(kTwoPi * x);
  double s = std::sin(kTwoPi * x);
  return rotate_quarters(c, s, q);
}

}  // namespace weyl
