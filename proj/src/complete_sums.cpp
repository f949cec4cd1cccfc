#include "weyl/complete_sums.hpp"

#include <algorithm>
#include <cmath>

#include "weyl/accumulator.hpp"
#include "weyl/modular.hpp"
#include "weyl/primality.hpp"
#include "weyl/torus.hpp"

namespace weyl {

namespace {

void require_prime_context(const IntPolynomial& phi, std::uint64_t p, const char* who) {
  require(is_prime(p), std::string(who) + ": p must be prime");
  require(p > static_cast<std::uint64_t>(phi.degree()),
          std::string(who) + ": p must exceed deg(phi)");
  require(mod_u64(phi.leading_coefficient(), p) != 0,
          std::string(who) + ": p must not divide lc(phi)");
}

// Deterministic tournament between sweep partials: keep the larger ratio,
// break ties toward the lexicographically smaller (p, c, a).
bool case_before(const SweepCase& x, const SweepCase& y) {
  if (x.p != y.p) return x.p < y.p;
  if (x.c != y.c) return x.c < y.c;
  return x.a < y.a;
}

void merge_sweep(SweepResult& into, const SweepResult& part) {
  into.cases += part.cases;
  if (part.worst_ratio > into.worst_ratio ||
      (part.worst_ratio == into.worst_ratio && into.cases && case_before(part.worst, into.worst))) {
    into.worst_ratio = part.worst_ratio;
    into.worst = part.worst;
  }
  if (part.violations) {
    if (!into.violations || case_before(part.first_violation, into.first_violation)) {
      into.first_violation = part.first_violation;
    }
    into.violations += part.violations;
  }
}

void observe(SweepResult& r, const SweepCase& cs, bool violated) {
  ++r.cases;
  double ratio = cs.bound != 0 ? cs.value / cs.bound : cs.value;
  if (ratio > r.worst_ratio) {
    r.worst_ratio = ratio;
    r.worst = cs;
  }
  if (violated) {
    if (!r.violations) r.first_violation = cs;
    ++r.violations;
  }
}

template <typename PerPrime>
SweepResult parallel_prime_sweep(const IntPolynomial& phi, std::uint64_t p_lo,
                                 std::uint64_t p_hi, PerPrime per_prime) {
  std::vector<std::uint64_t> ps =
      p_hi > p_lo + 1 ? primes_in_range(p_lo + 1, p_hi - 1) : std::vector<std::uint64_t>{};
  std::erase_if(ps, [&](std::uint64_t p) {
    return p <= static_cast<std::uint64_t>(phi.degree()) ||
           mod_u64(phi.leading_coefficient(), p) == 0;
  });
  SweepResult total;
#pragma omp parallel
  {
    SweepResult local;
#pragma omp for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(ps.size()); ++i) {
      per_prime(ps[i], local);
    }
#pragma omp critical(weyl_sweep_merge)
    merge_sweep(total, local);
  }
  return total;
}

}  // namespace

SumContext::SumContext(const IntPolynomial& phi, std::uint64_t q)
    : q_(q), degree_(phi.degree()) {
  require(q >= 2, "SumContext: modulus must be at least 2");
  roots_.resize(q);
  for (std::uint64_t j = 0; j < q; ++j) {
    roots_[j] = e_frac(static_cast<double>(j) / static_cast<double>(q));
  }
  auto coeffs = reduce_coeffs(phi, q);
  phi_mod_.resize(q);
  for (std::uint64_t x = 1; x <= q; ++x) {
    phi_mod_[x - 1] = eval_reduced(coeffs, x % q, q);
  }
}

std::complex<double> SumContext::sum(std::uint64_t a, std::uint64_t c) const {
  a %= q_;
  c %= q_;
  ComplexAccumulator acc;
  std::uint64_t ax = 0;
  for (std::uint64_t x = 1; x <= q_; ++x) {
    ax += a;
    if (ax >= q_) ax -= q_;
    std::uint64_t idx = ax + mulmod(c, phi_mod_[x - 1], q_);
    if (idx >= q_) idx -= q_;
    acc.add(roots_[idx]);
  }
  return acc.value();
}

CompleteSum complete_sum(const IntPolynomial& phi, std::uint64_t q,
                         std::uint64_t a, std::uint64_t c) {
  return complete_sum(SumContext(phi, q), a, c);
}

CompleteSum complete_sum(const SumContext& ctx, std::uint64_t a, std::uint64_t c) {
  return {ctx.modulus(), a % ctx.modulus(), c % ctx.modulus(), ctx.sum(a, c)};
}

WeilCheck check_weil(const IntPolynomial& phi, std::uint64_t p,
                     std::uint64_t a, std::uint64_t c) {
  require_prime_context(phi, p, "check_weil");
  require(c % p != 0, "check_weil: p must not divide c");
  CompleteSum s = complete_sum(phi, p, a % p, c % p);
  WeilCheck out;
  out.lhs = std::abs(s.value);
  out.rhs = (phi.degree() - 1) * std::sqrt(static_cast<double>(p));
  out.holds = out.lhs <= out.rhs + 1e-6;
  return out;
}

DeltaPoly::DeltaPoly(const IntPolynomial& phi) : k_(phi.degree()) {
  // phi(X+Y) - phi(X) = sum_j c_j sum_{i<j} C(j,i) X^i Y^{j-i}; every term
  // carries Y, so adding Y and dividing by Y is exact:
  //   Delta(X,Y) = sum_j c_j sum_{i<j} C(j,i) X^i Y^{j-1-i} + 1.
  std::vector<std::vector<bigint>> binom(k_ + 1);
  for (int j = 0; j <= k_; ++j) {
    binom[j].assign(j + 1, 1);
    for (int i = 1; i < j; ++i) binom[j][i] = binom[j - 1][i - 1] + binom[j - 1][i];
  }
  d_.assign(k_, std::vector<bigint>(k_, 0));
  const auto& c = phi.coefficients();
  for (int j = 1; j <= k_; ++j) {
    for (int i = 0; i < j; ++i) d_[i][j - 1 - i] += c[j] * binom[j][i];
  }
  d_[0][0] += 1;
}

bigint DeltaPoly::eval(const bigint& m, const bigint& h) const {
  bigint total = 0;
  for (int i = k_ - 1; i >= 0; --i) {
    bigint row = 0;
    for (int l = k_ - 1; l >= 0; --l) row = row * h + d_[i][l];
    total = total * m + row;
  }
  return total;
}

std::uint64_t DeltaPoly::eval_mod(const bigint& m, const bigint& h, std::uint64_t q) const {
  require(q >= 2, "DeltaPoly::eval_mod: modulus must be at least 2");
  std::uint64_t mm = mod_u64(m, q), hh = mod_u64(h, q);
  std::uint64_t total = 0;
  for (int i = k_ - 1; i >= 0; --i) {
    std::uint64_t row = 0;
    for (int l = k_ - 1; l >= 0; --l) row = (mulmod(row, hh, q) + mod_u64(d_[i][l], q)) % q;
    total = (mulmod(total, mm, q) + row) % q;
  }
  return total;
}

DeltaPoly delta_poly(const IntPolynomial& phi) { return DeltaPoly(phi); }

std::vector<std::uint32_t> curve_row_counts(const IntPolynomial& phi, std::uint64_t p) {
  require_prime_context(phi, p, "curve_row_counts");
  const DeltaPoly delta(phi);
  const int k = phi.degree();
  // Residues of the coefficient matrix, d[i][l] for X^i Y^l.
  std::vector<std::vector<std::uint64_t>> dmod(k, std::vector<std::uint64_t>(k));
  for (int i = 0; i < k; ++i)
    for (int l = 0; l < k; ++l) dmod[i][l] = mod_u64(delta.coeff(i, l), p);

  std::vector<std::uint32_t> rows(p + 1, 0);
#pragma omp parallel for schedule(static)
  for (std::int64_t h = 1; h <= static_cast<std::int64_t>(p); ++h) {
    std::uint64_t hh = static_cast<std::uint64_t>(h) % p;
    std::vector<std::uint64_t> rc(k);
    for (int i = 0; i < k; ++i) {
      std::uint64_t row = 0;
      for (int l = k - 1; l >= 0; --l) row = (mulmod(row, hh, p) + dmod[i][l]) % p;
      rc[i] = row;
    }
    std::uint32_t count = 0;
    for (std::uint64_t m = 0; m < p; ++m) {
      std::uint64_t v = 0;
      for (int i = k - 1; i >= 0; --i) v = (mulmod(v, m, p) + rc[i]) % p;
      count += v == 0;
    }
    rows[h] = count;
  }
  return rows;
}

CurveCount curve_char_sum_from_rows(std::span<const std::uint32_t> rows,
                                    std::uint64_t p, std::uint64_t c,
                                    bool include_h_zero) {
  c %= p;
  ComplexAccumulator acc;
  std::uint64_t points = 0;
  std::uint64_t hi = include_h_zero ? p : p - 1;
  std::uint64_t ch = 0;
  for (std::uint64_t h = 1; h <= hi; ++h) {
    ch += c;
    if (ch >= p) ch -= p;
    if (!rows[h]) continue;
    std::complex<double> w = e_frac(static_cast<double>(ch) / static_cast<double>(p));
    acc.add(static_cast<double>(rows[h]) * w);
    points += rows[h];
  }
  return {p, c, acc.value(), points};
}

CurveCount curve_char_sum(const IntPolynomial& phi, std::uint64_t p,
                          std::uint64_t c, bool include_h_zero) {
  auto rows = curve_row_counts(phi, p);
  return curve_char_sum_from_rows(rows, p, c, include_h_zero);
}

namespace {

SecondMoment second_moment_core(const SumContext& ctx,
                                std::span<const std::uint32_t> rows,
                                std::uint64_t c) {
  const std::uint64_t p = ctx.modulus();
  ComplexAccumulator lhs_acc;
  for (std::uint64_t a = 1; a < p; ++a) {
    std::complex<double> s = ctx.sum((a + p - c) % p, a);
    lhs_acc.add(std::norm(s), 0.0);
  }
  double lhs = lhs_acc.value().real();
  CurveCount cc = curve_char_sum_from_rows(rows, p, c, false);
  double rhs = static_cast<double>(p) * static_cast<double>(p) +
               static_cast<double>(p) * cc.char_sum.real();
  return {lhs, rhs, std::fabs(lhs - rhs)};
}

}  // namespace

SecondMoment second_moment_identity(const IntPolynomial& phi, std::uint64_t p,
                                    std::uint64_t c) {
  require_prime_context(phi, p, "second_moment_identity");
  require(c % p != 0, "second_moment_identity: p must not divide c");
  SumContext ctx(phi, p);
  auto rows = curve_row_counts(phi, p);
  return second_moment_core(ctx, rows, c % p);
}

LargeASearch find_large_a(const IntPolynomial& phi, std::uint64_t p,
                          std::uint64_t c, std::uint64_t scan_budget) {
  SumContext ctx(phi, p);
  return find_large_a(ctx, phi, c, scan_budget);
}

LargeASearch find_large_a(const SumContext& ctx, const IntPolynomial& phi,
                          std::uint64_t c, std::uint64_t scan_budget) {
  const std::uint64_t p = ctx.modulus();
  const std::uint64_t k = phi.degree();
  const std::uint64_t lemma_floor = (2 * k) * (2 * k) * (2 * k) * (2 * k);
  require_prime_context(phi, p, "find_large_a");
  require(p > lemma_floor, "find_large_a: p must exceed (2k)^4");
  c %= p;
  require(c != 0, "find_large_a: p must not divide c");

  auto phim = ctx.phi_mod();
  auto roots = ctx.roots();
  // Phase of S(p; a, a+c) at x is a*(x + phi(x)) + c*phi(x) mod p; the scan
  // advances a by updating idx in place with u[x] = x + phi(x) mod p.
  std::vector<std::uint64_t> u(p), idx(p);
  for (std::uint64_t x = 1; x <= p; ++x) {
    std::uint64_t v = (x % p) + phim[x - 1];
    if (v >= p) v -= p;
    u[x - 1] = v;
    idx[x - 1] = mulmod(c, phim[x - 1], p);
  }

  const double threshold = std::sqrt(static_cast<double>(p)) / 3.0;
  const std::uint64_t budget = scan_budget == 0 ? p : std::min(scan_budget, p);
  LargeASearch best{0, -1.0, true};
  for (std::uint64_t a = 1; a <= budget; ++a) {
    ComplexAccumulator acc;
    for (std::uint64_t x = 0; x < p; ++x) {
      std::uint64_t v = idx[x] + u[x];
      if (v >= p) v -= p;
      idx[x] = v;
      acc.add(roots[v]);
    }
    if ((a + c) % p == 0) continue;
    double mag = std::abs(acc.value());
    if (mag >= threshold) return {a, mag, false};
    if (mag > best.magnitude) best = {a, mag, true};
  }
  return best;
}

SweepResult weil_sweep(const IntPolynomial& phi, std::uint64_t p_lo, std::uint64_t p_hi) {
  const int k = phi.degree();
  const std::uint64_t lo = std::max<std::uint64_t>(p_lo, std::max(k, 3));
  return parallel_prime_sweep(phi, lo, p_hi, [&](std::uint64_t p, SweepResult& r) {
    SumContext ctx(phi, p);
    auto phim = ctx.phi_mod();
    auto roots = ctx.roots();
    const double bound = (k - 1) * std::sqrt(static_cast<double>(p));
    std::vector<std::uint64_t> t(p);
    for (std::uint64_t c = 1; c < p; ++c) {
      for (std::uint64_t x = 0; x < p; ++x) t[x] = mulmod(c, phim[x], p);
      for (std::uint64_t a = 0; a < p; ++a) {
        std::uint64_t ax = 0;
        ComplexAccumulator acc;
        for (std::uint64_t x = 0; x < p; ++x) {
          ax += a;
          if (ax >= p) ax -= p;
          std::uint64_t idx = t[x] + ax;
          if (idx >= p) idx -= p;
          acc.add(roots[idx]);
        }
        double mag = std::abs(acc.value());
        observe(r, {p, a, c, mag, bound}, mag > bound + 1e-6);
      }
    }
  });
}

SweepResult bombieri_sweep(const IntPolynomial& phi, std::uint64_t p_lo, std::uint64_t p_hi) {
  const int k = phi.degree();
  return parallel_prime_sweep(phi, p_lo, p_hi, [&](std::uint64_t p, SweepResult& r) {
    auto rows = curve_row_counts(phi, p);
    const double bound = ((k - 1) * (k - 1) + 2 * (k - 1) - 3) *
                             std::sqrt(static_cast<double>(p)) +
                         (k - 1) * (k - 1);
    for (std::uint64_t c = 1; c < p; ++c) {
      CurveCount cc = curve_char_sum_from_rows(rows, p, c, true);
      double mag = std::abs(cc.char_sum);
      observe(r, {p, 0, c, mag, bound}, mag > bound + 1e-6);
    }
  });
}

SweepResult second_moment_sweep(const IntPolynomial& phi, std::uint64_t p_lo,
                                std::uint64_t p_hi) {
  return parallel_prime_sweep(phi, p_lo, p_hi, [&](std::uint64_t p, SweepResult& r) {
    SumContext ctx(phi, p);
    auto rows = curve_row_counts(phi, p);
    const double tolerance = 1e-6 * static_cast<double>(p) * static_cast<double>(p);
    for (std::uint64_t c = 1; c < p; ++c) {
      SecondMoment sm = second_moment_core(ctx, rows, c);
      observe(r, {p, 0, c, sm.residual, tolerance}, sm.residual > tolerance);
    }
  });
}

}  // namespace weyl
