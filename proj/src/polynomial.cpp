#include "weyl/polynomial.hpp"

#include <sstream>

namespace weyl {

IntPolynomial::IntPolynomial(std::vector<bigint> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  require(coeffs_.size() >= 3, "IntPolynomial: degree must be at least 2");
}

IntPolynomial IntPolynomial::parse(std::string_view csv) {
  std::vector<bigint> coeffs;
  std::string token;
  std::istringstream in{std::string(csv)};
  while (std::getline(in, token, ',')) {
    std::size_t a = token.find_first_not_of(" \t");
    std::size_t b = token.find_last_not_of(" \t");
    require(a != std::string::npos, "IntPolynomial: empty coefficient in '" + std::string(csv) + "'");
    try {
      coeffs.emplace_back(token.substr(a, b - a + 1));
    } catch (const std::runtime_error&) {
      throw std::invalid_argument("IntPolynomial: bad coefficient '" + token + "'");
    }
  }
  require(!coeffs.empty(), "IntPolynomial: empty coefficient list");
  return IntPolynomial(std::move(coeffs));
}

IntPolynomial IntPolynomial::monomial(unsigned degree) {
  std::vector<bigint> coeffs(degree + 1, 0);
  coeffs.back() = 1;
  return IntPolynomial(std::move(coeffs));
}

bigint IntPolynomial::eval(const bigint& x) const {
  bigint r = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + *it;
  return r;
}

std::string IntPolynomial::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out += ',';
    out += coeffs_[i].str();
  }
  return out;
}

}  // namespace weyl
