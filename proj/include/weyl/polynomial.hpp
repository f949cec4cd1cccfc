#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "weyl/common.hpp"

namespace weyl {

// Integer-coefficient polynomial of degree k >= 2 with nonzero leading
// coefficient. Coefficients are stored low to high: c0, c1, ..., ck.
class IntPolynomial {
 public:
  // Trailing zero coefficients are trimmed before validation.
  explicit IntPolynomial(std::vector<bigint> coeffs);

  // Comma-separated coefficient list, lowest degree first: "0,0,1" is X^2.
  static IntPolynomial parse(std::string_view csv);

  static IntPolynomial monomial(unsigned degree);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const bigint& leading_coefficient() const { return coeffs_.back(); }
  const std::vector<bigint>& coefficients() const { return coeffs_; }

  bigint eval(const bigint& x) const;

  std::string to_string() const;  // "c0,c1,...,ck"

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  std::vector<bigint> coeffs_;
};

}  // namespace weyl
