#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "weyl/common.hpp"
#include "weyl/polynomial.hpp"

namespace weyl {

// S(q; a, c) = sum_{x=1}^{q} e((a x + c phi(x))/q), tagged with its inputs.
struct CompleteSum {
  std::uint64_t q = 0, a = 0, c = 0;
  std::complex<double> value;
};

// Number of solutions of Delta(m,h) == 0 mod p and the attached character
// sum sum e(c h / p) over those solutions.
struct CurveCount {
  std::uint64_t p = 0, c = 0;
  std::complex<double> char_sum;
  std::uint64_t point_count = 0;
};

struct WeilCheck {
  double lhs = 0, rhs = 0;
  bool holds = false;
};

struct SecondMoment {
  double lhs = 0, rhs = 0, residual = 0;
};

struct LargeASearch {
  std::uint64_t a = 0;
  double magnitude = 0;
  bool below_threshold = false;
};

// Precomputed per-modulus state: the q-th roots of unity and the residues
// phi(x) mod q for x = 1..q. Read-only once built; share freely.
class SumContext {
 public:
  SumContext(const IntPolynomial& phi, std::uint64_t q);

  std::uint64_t modulus() const { return q_; }
  int degree() const { return degree_; }
  std::span<const std::complex<double>> roots() const { return roots_; }
  // phi(x) mod q, x = 1..q (element x-1).
  std::span<const std::uint64_t> phi_mod() const { return phi_mod_; }

  std::complex<double> sum(std::uint64_t a, std::uint64_t c) const;

 private:
  std::uint64_t q_;
  int degree_;
  std::vector<std::complex<double>> roots_;
  std::vector<std::uint64_t> phi_mod_;
};

CompleteSum complete_sum(const IntPolynomial& phi, std::uint64_t q,
                         std::uint64_t a, std::uint64_t c);
CompleteSum complete_sum(const SumContext& ctx, std::uint64_t a, std::uint64_t c);

// |S(p;a,c)| against (k-1) sqrt(p). Requires p prime, p > k, p not dividing
// c or lc(phi).
WeilCheck check_weil(const IntPolynomial& phi, std::uint64_t p,
                     std::uint64_t a, std::uint64_t c);

// The bivariate polynomial Delta(X,Y) = (phi(X+Y) - phi(X) + Y)/Y, which is
// an exact polynomial division; Delta(X,0) = phi'(X) + 1 falls out of the
// same coefficient matrix.
class DeltaPoly {
 public:
  explicit DeltaPoly(const IntPolynomial& phi);

  int total_degree() const { return k_ - 1; }
  bigint eval(const bigint& m, const bigint& h) const;
  std::uint64_t eval_mod(const bigint& m, const bigint& h, std::uint64_t q) const;

  // Coefficient of X^i Y^l.
  const bigint& coeff(int i, int l) const { return d_[i][l]; }

 private:
  int k_;
  std::vector<std::vector<bigint>> d_;
};

DeltaPoly delta_poly(const IntPolynomial& phi);

// Solution counts of Delta(m,h) == 0 mod p per h: element h of the result
// (h = 1..p, index 0 unused) counts m in [1,p]. Exhaustive O(p^2) scan.
// Requires p prime, p > k, p not dividing lc(phi).
std::vector<std::uint32_t> curve_row_counts(const IntPolynomial& phi, std::uint64_t p);

CurveCount curve_char_sum(const IntPolynomial& phi, std::uint64_t p,
                          std::uint64_t c, bool include_h_zero);
CurveCount curve_char_sum_from_rows(std::span<const std::uint32_t> rows,
                                    std::uint64_t p, std::uint64_t c,
                                    bool include_h_zero);

// lhs = sum_{a=1}^{p-1} |S(p; a-c, a)|^2 against the closed form
// rhs = p^2 + p * sum_{h=1..p-1, Delta(m,h)==0} e(ch/p). The identity is
// exact, so residual is pure floating error. Requires p prime, p > k,
// p not dividing c or lc(phi).
SecondMoment second_moment_identity(const IntPolynomial& phi, std::uint64_t p,
                                    std::uint64_t c);

// First a in scan order 1,2,...,p with p not dividing (a+c) and
// |S(p; a, a+c)| >= sqrt(p)/3. scan_budget 0 means the full scan; if the
// budget runs out the argmax a is returned with below_threshold set, which
// cannot happen under the stated preconditions (p > (2k)^4, p prime,
// p not dividing c or lc(phi)).
LargeASearch find_large_a(const IntPolynomial& phi, std::uint64_t p,
                          std::uint64_t c, std::uint64_t scan_budget = 0);
LargeASearch find_large_a(const SumContext& ctx, const IntPolynomial& phi,
                          std::uint64_t c, std::uint64_t scan_budget = 0);

// Bulk verification sweeps over open prime intervals (p_lo, p_hi), skipping
// primes that divide lc(phi). Thread-parallel over primes; results do not
// depend on the thread count.
struct SweepCase {
  std::uint64_t p = 0, a = 0, c = 0;
  double value = 0, bound = 0;
};

struct SweepResult {
  std::uint64_t cases = 0;
  std::uint64_t violations = 0;
  double worst_ratio = -1.0;  // value/bound of the worst case seen
  SweepCase worst;
  SweepCase first_violation;
};

// |S(p;a,c)| <= (k-1) sqrt(p) over all a in [0,p), c in [1,p).
SweepResult weil_sweep(const IntPolynomial& phi, std::uint64_t p_lo, std::uint64_t p_hi);
// |curve char sum with h in [1,p]| <= ((k-1)^2 + 2(k-1) - 3) sqrt(p) + (k-1)^2
// over all c in [1,p).
SweepResult bombieri_sweep(const IntPolynomial& phi, std::uint64_t p_lo, std::uint64_t p_hi);
// residual <= 1e-6 p^2 over all c in [1,p).
SweepResult second_moment_sweep(const IntPolynomial& phi, std::uint64_t p_lo, std::uint64_t p_hi);

}  // namespace weyl
