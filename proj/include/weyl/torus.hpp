#pragma once

#include <complex>
#include <string_view>

#include "weyl/common.hpp"

namespace weyl {

// A point of R/Z in 128-bit fixed point: the represented value is
// raw() / 2^128 in [0,1). Addition, negation and integer multiples wrap
// mod 2^128, which is exactly reduction mod 1 on the represented values;
// rounding happens only at construction.
class TorusPoint {
 public:
  constexpr TorusPoint() = default;

  static constexpr TorusPoint from_raw(u128 frac) { return TorusPoint(frac); }

  // x reduced mod 1, rounded to the nearest representable point.
  static TorusPoint from_double(double x);

  // num/den reduced mod 1, rounded to nearest. den > 0 required.
  static TorusPoint from_ratio(const bigint& num, const bigint& den);

  // Plain decimal text such as "0.41421356", ".5", "-0.25" (reduced mod 1).
  static TorusPoint parse_decimal(std::string_view text);

  // sqrt(2)-1 and (sqrt(5)-1)/2 to full fixed-point precision.
  static TorusPoint sqrt2_minus_one();
  static TorusPoint golden();

  constexpr u128 raw() const { return frac_; }
  double to_double() const;

  // Distance to the nearest integer: min(frac, 1-frac), exact in fixed
  // point, rounded once on conversion.
  double dist_to_int() const;

  constexpr TorusPoint operator+(TorusPoint o) const {
    return TorusPoint(static_cast<u128>(frac_ + o.frac_));
  }
  constexpr TorusPoint operator-(TorusPoint o) const {
    return TorusPoint(static_cast<u128>(frac_ - o.frac_));
  }
  constexpr TorusPoint operator-() const {
    return TorusPoint(static_cast<u128>(~frac_ + 1));
  }

  // n * t mod 1. Exact on representations: only the low 128 bits of the
  // product matter, so any integer multiplier may be reduced mod 2^128 first.
  constexpr TorusPoint times(u128 n) const {
    return TorusPoint(static_cast<u128>(frac_ * n));
  }
  TorusPoint times(const bigint& n) const { return times(low_u128(n)); }

  friend constexpr bool operator==(TorusPoint a, TorusPoint b) {
    return a.frac_ == b.frac_;
  }

 private:
  constexpr explicit TorusPoint(u128 frac) : frac_(frac) {}
  u128 frac_ = 0;
};

// ||x||: distance from x to the nearest integer, in [0, 1/2].
double dist_to_int(double x);

// e(z) = exp(2*pi*i*z). The double overload takes the phase in full turns;
// both reduce to the nearest quarter turn first so that multiples of 1/4
// come out exact and the trig argument stays small.
std::complex<double> e_frac(double turns);
std::complex<double> e_frac(TorusPoint t);

}  // namespace weyl
