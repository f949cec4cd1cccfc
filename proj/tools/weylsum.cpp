// weylsum: command-line driver for the exponential-sum laboratory.
//
// Subcommands:
//   complete-sum   evaluate S(q;a,c) with an optional Weil-bound readout
//   verify         run an invariant sweep (weil | second-moment | bombieri | lemma1)
//   witness        construct witnesses along a torus slice and measure the
//                  growth exponent of |f| against P^(3/4 - tau)
//
// Exit codes: 0 success, 1 domain/suite failure, 2 usage error.

#include <cmath>
#include <complex>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>
#include <openssl/evp.h>

#include "weyl/complete_sums.hpp"
#include "weyl/diophantine.hpp"
#include "weyl/modular.hpp"
#include "weyl/primality.hpp"
#include "weyl/torus.hpp"
#include "weyl/weyl_sums.hpp"
#include "weyl/witness.hpp"

namespace {

using nlohmann::json;

constexpr const char* kToolVersion = "0.1.0";

// Round-trippable, locale-independent rendering for data files.
std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string iso_utc_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("short write to " + path);
}

json make_manifest(const std::string& command, const json& parameters,
                   std::optional<std::uint64_t> seed) {
  json m;
  m["tool"] = "weylsum";
  m["version"] = kToolVersion;
  m["command"] = command;
  m["timestamp"] = iso_utc_now();
  m["parameters"] = parameters;
  m["seed"] = seed ? json(*seed) : json(nullptr);
  m["threads"] = omp_get_max_threads();
  m["outputs"] = json::object();
  return m;
}

void attach_output(json& manifest, const std::string& name, const std::string& content) {
  manifest["outputs"][name] = {{"bytes", content.size()}, {"sha256", sha256_hex(content)}};
}

void apply_threads(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

weyl::TorusPoint parse_alpha(const std::string& text) {
  if (text == "sqrt2m1") return weyl::TorusPoint::sqrt2_minus_one();
  if (text == "golden") return weyl::TorusPoint::golden();
  return weyl::TorusPoint::parse_decimal(text);
}

// ---------------------------------------------------------------------------
// complete-sum

struct CompleteSumOpts {
  std::string phi;
  std::uint64_t q = 0, a = 0, c = 0;
  std::string format = "text";
  int threads = 0;
};

int run_complete_sum(const CompleteSumOpts& o) {
  apply_threads(o.threads);
  weyl::IntPolynomial phi = weyl::IntPolynomial::parse(o.phi);
  weyl::CompleteSum s = weyl::complete_sum(phi, o.q, o.a, o.c);
  double magnitude = std::abs(s.value);

  const int k = phi.degree();
  bool weil_applies = weyl::is_prime(o.q) && o.q > static_cast<std::uint64_t>(k) &&
                      weyl::mod_u64(phi.leading_coefficient(), o.q) != 0 && s.c != 0;
  double bound = (k - 1) * std::sqrt(static_cast<double>(o.q));

  if (o.format == "json") {
    json j;
    j["command"] = "complete-sum";
    j["phi"] = o.phi;
    j["q"] = o.q;
    j["a"] = s.a;
    j["c"] = s.c;
    j["value"] = {{"re", s.value.real()}, {"im", s.value.imag()}};
    j["magnitude"] = magnitude;
    j["weil"] = weil_applies ? json{{"bound", bound},
                                    {"ratio", magnitude / bound},
                                    {"holds", magnitude <= bound + 1e-6}}
                             : json(nullptr);
    j["manifest"] = make_manifest("complete-sum",
                                  {{"phi", o.phi}, {"q", o.q}, {"a", o.a}, {"c", o.c},
                                   {"format", o.format}},
                                  std::nullopt);
    std::cout << j.dump(2) << "\n";
  } else if (o.format == "csv") {
    std::cout << "q,a,c,re,im,magnitude,weil_bound,weil_ratio\r\n"
              << o.q << ',' << s.a << ',' << s.c << ',' << fmt17(s.value.real()) << ','
              << fmt17(s.value.imag()) << ',' << fmt17(magnitude) << ',';
    if (weil_applies) {
      std::cout << fmt17(bound) << ',' << fmt17(magnitude / bound);
    } else {
      std::cout << ',';
    }
    std::cout << "\r\n";
  } else {
    std::cout << "S(" << o.q << "; " << s.a << ", " << s.c << ")  phi = " << o.phi << "\n"
              << "  value     = " << fmt17(s.value.real()) << " + " << fmt17(s.value.imag())
              << "i\n"
              << "  magnitude = " << fmt17(magnitude) << "\n";
    if (weil_applies) {
      std::cout << "  weil      = |S| / ((k-1) sqrt(p)) = " << fmt6(magnitude / bound)
                << " (bound " << fmt6(bound) << ")\n";
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOpts {
  std::string suite, phi, out;
  std::uint64_t p_min = 0, p_max = 0;
  int trials = 10;
  double ceiling = 20.0;
  std::uint64_t seed = 1;
  int threads = 0;
};

json sweep_case_json(const weyl::SweepCase& c) {
  return {{"p", c.p}, {"a", c.a}, {"c", c.c}, {"value", c.value}, {"bound", c.bound}};
}

int run_verify(const VerifyOpts& o) {
  apply_threads(o.threads);
  weyl::IntPolynomial phi = weyl::IntPolynomial::parse(o.phi);

  json report;
  report["command"] = "verify";
  report["suite"] = o.suite;
  report["phi"] = o.phi;
  report["seed"] = json(nullptr);
  report["ceiling"] = json(nullptr);
  report["trials_per_prime"] = json(nullptr);
  std::uint64_t failures = 0;

  if (o.suite == "lemma1") {
    std::uint64_t lo = std::max<std::uint64_t>(o.p_min, 10);
    std::uint64_t hi = o.p_max ? o.p_max : 1000;
    weyl::Lemma1Sweep s = weyl::lemma_one_sweep(phi, lo, hi, o.trials, o.ceiling, o.seed);
    failures = s.exceedances;
    std::cout << "suite lemma1  phi=" << o.phi << "  primes in (" << lo << ", " << hi
              << ")  trials/prime=" << o.trials << "  seed=" << o.seed << "\n"
              << "cases " << s.cases << ", exceedances " << s.exceedances << " (ceiling "
              << fmt6(o.ceiling) << ")\n"
              << "max normalized error " << fmt6(s.worst.normalized_error) << " at p="
              << s.worst.p << " a=" << s.worst.a << " c=" << s.worst.c << " beta="
              << fmt6(s.worst.beta) << " P=" << s.worst.P << "\n";
    for (const auto& e : s.over) {
      std::cout << "EXCEEDANCE: p=" << e.p << " a=" << e.a << " c=" << e.c
                << " beta=" << fmt17(e.beta) << " P=" << e.P << " normalized="
                << fmt6(e.normalized_error) << "\n";
    }
    report["p_min"] = lo;
    report["p_max"] = hi;
    report["cases"] = s.cases;
    report["failures"] = failures;
    report["seed"] = o.seed;
    report["ceiling"] = o.ceiling;
    report["trials_per_prime"] = o.trials;
    report["worst"] = {{"p", s.worst.p},       {"a", s.worst.a},
                       {"c", s.worst.c},       {"beta", s.worst.beta},
                       {"P", s.worst.P},       {"normalized_error", s.worst.normalized_error}};
    report["first_violation"] =
        s.over.empty() ? json(nullptr)
                       : json{{"p", s.over[0].p},
                              {"a", s.over[0].a},
                              {"c", s.over[0].c},
                              {"beta", s.over[0].beta},
                              {"P", s.over[0].P},
                              {"normalized_error", s.over[0].normalized_error}};
  } else {
    std::uint64_t hi = o.p_max ? o.p_max : (o.suite == "second-moment" ? 200 : 500);
    weyl::SweepResult r;
    if (o.suite == "weil") {
      r = weyl::weil_sweep(phi, o.p_min, hi);
    } else if (o.suite == "second-moment") {
      r = weyl::second_moment_sweep(phi, o.p_min, hi);
    } else {
      r = weyl::bombieri_sweep(phi, o.p_min, hi);
    }
    failures = r.violations;
    std::cout << "suite " << o.suite << "  phi=" << o.phi << "  primes below " << hi << "\n"
              << "cases " << r.cases << ", violations " << r.violations << "\n";
    if (r.cases) {
      const char* what = o.suite == "second-moment" ? "residual" : "|sum|";
      std::cout << "worst " << what << " " << fmt6(r.worst.value) << " vs bound "
                << fmt6(r.worst.bound) << " (ratio " << fmt6(r.worst_ratio) << ") at p="
                << r.worst.p << " a=" << r.worst.a << " c=" << r.worst.c << "\n";
    }
    if (r.violations) {
      std::cout << "FIRST VIOLATION at p=" << r.first_violation.p << " a="
                << r.first_violation.a << " c=" << r.first_violation.c << " value="
                << fmt17(r.first_violation.value) << " bound="
                << fmt17(r.first_violation.bound) << "\n";
    }
    report["p_min"] = o.p_min;
    report["p_max"] = hi;
    report["cases"] = r.cases;
    report["failures"] = failures;
    report["worst"] = sweep_case_json(r.worst);
    report["first_violation"] =
        r.violations ? sweep_case_json(r.first_violation) : json(nullptr);
  }

  report["passed"] = failures == 0;
  std::cout << (failures == 0 ? "PASS" : "FAIL") << "\n";

  if (!o.out.empty()) {
    std::string body = report.dump(2) + "\n";
    write_file(o.out + ".json", body);
    json manifest = make_manifest(
        "verify",
        {{"suite", o.suite}, {"phi", o.phi}, {"p_min", o.p_min}, {"p_max", o.p_max},
         {"trials", o.trials}, {"ceiling", o.ceiling}, {"out", o.out}},
        o.suite == "lemma1" ? std::optional<std::uint64_t>(o.seed) : std::nullopt);
    attach_output(manifest, o.out + ".json", body);
    write_file(o.out + ".manifest.json", manifest.dump(2) + "\n");
  }
  return failures == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// witness

struct WitnessOpts {
  std::string phi, alpha2, out = "witness", strategy = "prime-scan";
  double tau = 0;
  std::uint64_t p_min = 0, p_max = 10000;
  int threads = 0;
};

int run_witness(const WitnessOpts& o) {
  apply_threads(o.threads);
  weyl::WitnessConfig config{weyl::IntPolynomial::parse(o.phi), o.tau, o.p_min, o.p_max,
                             parse_alpha(o.alpha2)};
  if (config.p_min == 0) {
    std::uint64_t k = config.phi.degree();
    config.p_min = (2 * k) * (2 * k) * (2 * k) * (2 * k) + 1;
  }
  weyl::ApproxStrategy strategy = o.strategy == "convergent-filter"
                                      ? weyl::ApproxStrategy::kConvergentFilter
                                      : weyl::ApproxStrategy::kPrimeScan;
  weyl::ExponentSweep sweep = weyl::exponent_sweep(config, strategy);

  // console summary
  std::cout << "witness sweep  phi=" << o.phi << "  tau=" << fmt6(o.tau) << "  alpha2="
            << o.alpha2 << "  p in [" << config.p_min << ", " << config.p_max << "]\n";
  for (const auto& r : sweep.reports) {
    std::cout << "p=" << r.p << " a1=" << r.a1 << " a2=" << r.a2 << " P=" << r.P
              << " |f|=" << fmt6(r.f_abs) << " target=" << fmt6(r.target) << " ratio="
              << fmt6(r.ratio) << " exponent=" << fmt6(r.exponent) << "\n";
  }
  if (sweep.rejected) {
    std::cout << "rejected approximations (p | a2 or p | lc): " << sweep.rejected << "\n";
  }
  if (!sweep.diagnostic.empty()) {
    std::cout << "no witnesses: " << sweep.diagnostic << "\n";
  }
  if (sweep.slope_valid) {
    std::cout << "fitted slope of log|f| vs log P: " << fmt6(sweep.fitted_slope)
              << "  (target " << fmt6(0.75 - o.tau) << ")\n";
  }

  // data files
  std::string csv = "p,a1,a2,P,f_abs,target,ratio,exponent\r\n";
  for (const auto& r : sweep.reports) {
    csv += std::to_string(r.p) + ',' + std::to_string(r.a1) + ',' + std::to_string(r.a2) +
           ',' + std::to_string(r.P) + ',' + fmt17(r.f_abs) + ',' + fmt17(r.target) + ',' +
           fmt17(r.ratio) + ',' + fmt17(r.exponent) + "\r\n";
  }

  std::string dat = "# log_P  log_f_abs\n";
  double mean_x = 0, mean_y = 0;
  for (const auto& r : sweep.reports) {
    double x = std::log(static_cast<double>(r.P));
    double y = std::log(r.f_abs);
    dat += fmt17(x) + " " + fmt17(y) + "\n";
    mean_x += x;
    mean_y += y;
  }
  if (!sweep.reports.empty()) {
    mean_x /= static_cast<double>(sweep.reports.size());
    mean_y /= static_cast<double>(sweep.reports.size());
  }

  json j;
  j["command"] = "witness";
  j["phi"] = o.phi;
  j["tau"] = o.tau;
  j["alpha2"] = o.alpha2;
  j["p_min"] = config.p_min;
  j["p_max"] = config.p_max;
  j["strategy"] = o.strategy;
  j["fitted_slope"] = sweep.slope_valid ? json(sweep.fitted_slope) : json(nullptr);
  j["slope_valid"] = sweep.slope_valid;
  j["rejected"] = sweep.rejected;
  j["diagnostic"] = sweep.diagnostic;
  j["reports"] = json::array();
  for (const auto& r : sweep.reports) {
    j["reports"].push_back({{"p", r.p},
                            {"a2", r.a2},
                            {"beta2", r.beta2},
                            {"a1", r.a1},
                            {"beta1", r.beta1},
                            {"P", r.P},
                            {"f_abs", r.f_abs},
                            {"target", r.target},
                            {"ratio", r.ratio},
                            {"S_abs", r.S_abs},
                            {"exponent", r.exponent}});
  }
  std::string body = j.dump(2) + "\n";

  double slope = sweep.slope_valid ? sweep.fitted_slope : 0.75 - o.tau;
  std::string base = o.out.find_last_of('/') == std::string::npos
                         ? o.out
                         : o.out.substr(o.out.find_last_of('/') + 1);
  std::string gp;
  gp += "# gnuplot script for the witness growth curve\n";
  gp += "set xlabel \"log P\"\n";
  gp += "set ylabel \"log |f|\"\n";
  gp += "set key left top\n";
  gp += "plot \"" + base + ".dat\" using 1:2 with points pt 7 title \"witnesses\", \\\n";
  gp += "     " + fmt17(slope) + "*(x-" + fmt17(mean_x) + ")+" + fmt17(mean_y) +
        " with lines title \"fit\", \\\n";
  gp += "     " + fmt17(0.75 - o.tau) + "*(x-" + fmt17(mean_x) + ")+" + fmt17(mean_y) +
        " with lines dt 2 title \"slope 3/4-tau\"\n";

  write_file(o.out + ".csv", csv);
  write_file(o.out + ".json", body);
  write_file(o.out + ".dat", dat);
  write_file(o.out + ".gp", gp);

  json manifest = make_manifest(
      "witness",
      {{"phi", o.phi}, {"tau", o.tau}, {"alpha2", o.alpha2}, {"p_min", config.p_min},
       {"p_max", config.p_max}, {"strategy", o.strategy}, {"out", o.out}},
      std::nullopt);
  attach_output(manifest, o.out + ".csv", csv);
  attach_output(manifest, o.out + ".json", body);
  attach_output(manifest, o.out + ".dat", dat);
  attach_output(manifest, o.out + ".gp", gp);
  write_file(o.out + ".manifest.json", manifest.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weylsum: two-dimensional Weyl sums, complete sums mod p, and witness "
               "constructions along torus slices"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  CLI::Validator tau_range(
      [](std::string& s) {
        double v = std::stod(s);
        return (v > 0.0 && v < 0.25) ? std::string() : std::string("tau must lie in (0, 1/4)");
      },
      "TAU");
  CLI::Validator alpha_format(
      [](std::string& s) {
        if (s == "sqrt2m1" || s == "golden") return std::string();
        try {
          weyl::TorusPoint::parse_decimal(s);
          return std::string();
        } catch (const std::exception& e) {
          return std::string(e.what());
        }
      },
      "ALPHA");

  CompleteSumOpts cs;
  auto* cs_cmd = app.add_subcommand(
      "complete-sum", "Evaluate S(q;a,c) = sum_{x=1..q} e((a x + c phi(x))/q)");
  cs_cmd->add_option("--phi", cs.phi, "coefficients c0,c1,...,ck (degree >= 2)")->required();
  cs_cmd->add_option("--q", cs.q, "modulus")
      ->required()
      ->check(CLI::Range(std::uint64_t(2), std::uint64_t(10000000)));
  cs_cmd->add_option("--a", cs.a, "linear coefficient a")->required();
  cs_cmd->add_option("--c", cs.c, "phi coefficient c")->required();
  cs_cmd->add_option("--format", cs.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  cs_cmd->add_option("--threads", cs.threads, "worker threads (0 = library default)")
      ->envname("WEYLSUM_THREADS");

  VerifyOpts vf;
  auto* vf_cmd = app.add_subcommand("verify", "Run an invariant sweep over a prime range");
  vf_cmd->add_option("--suite", vf.suite, "which sweep to run")
      ->required()
      ->check(CLI::IsMember({"weil", "second-moment", "bombieri", "lemma1"}));
  vf_cmd->add_option("--phi", vf.phi, "coefficients c0,c1,...,ck")->required();
  vf_cmd->add_option("--p-min", vf.p_min, "lower end of the open prime interval");
  vf_cmd->add_option("--p-max", vf.p_max,
                     "upper end of the open prime interval (0 = suite default)");
  vf_cmd->add_option("--trials", vf.trials, "random draws per prime (lemma1)")
      ->check(CLI::Range(1, 1000000));
  vf_cmd->add_option("--ceiling", vf.ceiling, "normalized-error ceiling (lemma1)");
  vf_cmd->add_option("--seed", vf.seed, "seed for the lemma1 draws");
  vf_cmd->add_option("--out", vf.out, "write a JSON report to <out>.json");
  vf_cmd->add_option("--threads", vf.threads, "worker threads (0 = library default)")
      ->envname("WEYLSUM_THREADS");

  WitnessOpts wt;
  auto* wt_cmd = app.add_subcommand(
      "witness", "Construct slice witnesses and measure the growth exponent");
  wt_cmd->add_option("--phi", wt.phi, "coefficients c0,c1,...,ck")->required();
  wt_cmd->add_option("--tau", wt.tau, "exponent defect, 0 < tau < 1/4")
      ->required()
      ->check(tau_range);
  wt_cmd->add_option("--alpha2", wt.alpha2, "decimal in [0,1), or sqrt2m1 | golden")
      ->required()
      ->check(alpha_format);
  wt_cmd->add_option("--p-min", wt.p_min, "smallest prime (0 = (2k)^4 + 1)");
  wt_cmd->add_option("--p-max", wt.p_max, "largest prime (inclusive)");
  wt_cmd->add_option("--strategy", wt.strategy, "approximation search strategy")
      ->check(CLI::IsMember({"prime-scan", "convergent-filter"}));
  wt_cmd->add_option("--out", wt.out, "output path prefix");
  wt_cmd->add_option("--threads", wt.threads, "worker threads (0 = library default)")
      ->envname("WEYLSUM_THREADS");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cs_cmd->parsed()) return run_complete_sum(cs);
    if (vf_cmd->parsed()) return run_verify(vf);
    if (wt_cmd->parsed()) return run_witness(wt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
