// Benchmark: OpenMP sum kernels against the serial extended-precision
// reference, plus thread-scaling of the production kernels.
//
//   bench_sums [--P terms] [--p prime] [--ref-P terms] [--threads N]

#include <cmath>
#include <complex>
#include <cstdio>
#include <string>

#include <CLI11.hpp>
#include <omp.h>

#include "weyl/complete_sums.hpp"
#include "weyl/reference.hpp"
#include "weyl/torus.hpp"
#include "weyl/weyl_sums.hpp"

namespace {

struct Timing {
  double seconds;
  std::complex<double> value;
};

template <typename Fn>
Timing timed(Fn fn) {
  double t0 = omp_get_wtime();
  std::complex<double> v = fn();
  return {omp_get_wtime() - t0, v};
}

void row(const char* name, std::uint64_t terms, const Timing& t) {
  std::printf("%-34s %12llu terms  %9.3f s  %8.1f Mterms/s\n", name,
              static_cast<unsigned long long>(terms), t.seconds,
              terms / t.seconds / 1e6);
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t P = 8000000, ref_P = 200000, p = 5741;
  int threads = 0;
  CLI::App app{"weylsum kernel benchmark"};
  app.add_option("--P", P, "terms for the production kernels");
  app.add_option("--ref-P", ref_P, "terms for the serial reference");
  app.add_option("--p", p, "prime modulus for the decomposed sum");
  app.add_option("--threads", threads, "thread count (0 = OpenMP default)");
  CLI11_PARSE(app, argc, argv);
  if (threads > 0) omp_set_num_threads(threads);
  const int max_threads = omp_get_max_threads();

  weyl::IntPolynomial phi = weyl::IntPolynomial::monomial(2);
  weyl::TorusPoint a1 = weyl::TorusPoint::golden();
  weyl::TorusPoint a2 = weyl::TorusPoint::sqrt2_minus_one();
  double beta = 1.0 / (2.1 * static_cast<double>(p));

  std::printf("== correctness: OpenMP kernels vs serial reference (P = %llu) ==\n",
              static_cast<unsigned long long>(ref_P));
  auto narrow = [](std::complex<long double> z) {
    return std::complex<double>(static_cast<double>(z.real()),
                                static_cast<double>(z.imag()));
  };
  Timing ref_f = timed([&] { return narrow(weyl::ref::weyl_f(phi, ref_P, a1, a2)); });
  Timing par_f = timed([&] { return weyl::weyl_f({phi, ref_P, a1, a2}); });
  Timing ref_d = timed([&] {
    return narrow(weyl::ref::weyl_g_decomposed(phi, ref_P, p, 1, 7, beta));
  });
  Timing par_d = timed([&] { return weyl::weyl_g_decomposed(phi, ref_P, p, 1, 7, beta); });
  std::printf("weyl_f            |delta| = %.3e\n", std::abs(ref_f.value - par_f.value));
  std::printf("weyl_g_decomposed |delta| = %.3e\n", std::abs(ref_d.value - par_d.value));
  row("reference weyl_f (serial)", ref_P, ref_f);
  row("kernel weyl_f", ref_P, par_f);
  row("reference weyl_g_decomposed", ref_P, ref_d);
  row("kernel weyl_g_decomposed", ref_P, par_d);

  std::printf("\n== thread scaling at P = %llu (max threads %d) ==\n",
              static_cast<unsigned long long>(P), max_threads);
  for (int n = 1; n <= max_threads; n *= 2) {
    omp_set_num_threads(n);
    Timing tf = timed([&] { return weyl::weyl_f({phi, P, a1, a2}); });
    Timing td = timed([&] { return weyl::weyl_g_decomposed(phi, P, p, 1, 7, beta); });
    std::printf("threads %2d:\n", n);
    row("  weyl_f", P, tf);
    row("  weyl_g_decomposed", P, td);
  }

  omp_set_num_threads(max_threads);
  std::printf("\n== mod-p sweeps ==\n");
  double t0 = omp_get_wtime();
  weyl::SweepResult sm = weyl::second_moment_sweep(phi, 0, 200);
  std::printf("second_moment_sweep p<200: %llu cases in %.3f s (worst residual ratio %.2e)\n",
              static_cast<unsigned long long>(sm.cases), omp_get_wtime() - t0,
              sm.worst_ratio);
  return 0;
}
