#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>
#include <openssl/evp.h>

#include "schema_check.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(WEYLSUM_BIN) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) r.output.append(buf, n);
  int status = pclose(pipe);
  r.exit_code = WEXITSTATUS(status);
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json load_schema(const std::string& name) {
  return json::parse(slurp(fs::path(WEYLSUM_SCHEMA_DIR) / name));
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

}  // namespace

TEST_CASE("cli: complete-sum json output and schema") {
  RunResult r = run_cli("complete-sum --phi 0,0,1 --q 5 --a 0 --c 1 --format json");
  CHECK(r.exit_code == 0);
  json j = json::parse(r.output);
  CHECK(j["magnitude"].get<double>() == doctest::Approx(std::sqrt(5.0)).epsilon(1e-9));
  CHECK(j["weil"]["holds"].get<bool>());
  std::string err;
  CHECK_MESSAGE(weyl::test::validate_schema(load_schema("complete_sum.schema.json"), j, &err),
                err);
  std::string err2;
  CHECK_MESSAGE(weyl::test::validate_schema(load_schema("run_manifest.schema.json"),
                                            j["manifest"], &err2),
                err2);
}

TEST_CASE("cli: complete-sum trivial value and formats") {
  RunResult text = run_cli("complete-sum --phi 0,0,1 --q 7 --a 0 --c 0");
  CHECK(text.exit_code == 0);
  CHECK(text.output.find("magnitude = 7") != std::string::npos);

  RunResult csv = run_cli("complete-sum --phi 0,0,1 --q 7 --a 0 --c 0 --format csv");
  CHECK(csv.exit_code == 0);
  CHECK(csv.output.rfind("q,a,c,re,im,magnitude,weil_bound,weil_ratio\r\n", 0) == 0);
}

TEST_CASE("cli: exit codes") {
  CHECK(run_cli("complete-sum --phi 0,0,1 --q 1 --a 0 --c 1").exit_code == 2);  // usage
  CHECK(run_cli("complete-sum --phi 0,1 --q 5 --a 0 --c 1").exit_code == 1);    // degree 1
  CHECK(run_cli("bogus-subcommand").exit_code == 2);
  CHECK(run_cli("witness --phi 0,0,1 --tau 0.3 --alpha2 sqrt2m1").exit_code == 2);
  CHECK(run_cli("witness --phi 0,0,1 --tau 0.1 --alpha2 not-a-number").exit_code == 2);
  CHECK(run_cli("verify --suite bombieri --p-max 50 --phi 0,1").exit_code == 1);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("cli: verify second-moment passes on a small range") {
  RunResult r = run_cli("verify --suite second-moment --phi 0,0,1 --p-max 60");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("violations 0") != std::string::npos);
  CHECK(r.output.find("PASS") != std::string::npos);
}

TEST_CASE("cli: verify exits 1 and lists parameters on suite failure") {
  // An absurdly low ceiling forces lemma1 exceedances; the offending draws
  // must be listed and the exit code must flag the failure.
  RunResult r = run_cli(
      "verify --suite lemma1 --phi 0,0,1 --p-max 40 --trials 2 --ceiling 0.0001");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("EXCEEDANCE") != std::string::npos);
  CHECK(r.output.find("FAIL") != std::string::npos);
}

TEST_CASE("cli: WEYLSUM_THREADS is honored and recorded, flag wins") {
  fs::create_directories("cli_out");
  std::string cmd = "WEYLSUM_THREADS=3 " + std::string(WEYLSUM_BIN) +
                    " witness --phi 0,0,1 --tau 0.1 --alpha2 sqrt2m1 --p-min 257 "
                    "--p-max 300 --out cli_out/envthreads > /dev/null 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  json manifest = json::parse(slurp("cli_out/envthreads.manifest.json"));
  CHECK(manifest["threads"].get<int>() == 3);

  std::string cmd2 = "WEYLSUM_THREADS=3 " + std::string(WEYLSUM_BIN) +
                     " witness --phi 0,0,1 --tau 0.1 --alpha2 sqrt2m1 --p-min 257 "
                     "--p-max 300 --threads 2 --out cli_out/flagthreads > /dev/null 2>&1";
  REQUIRE(std::system(cmd2.c_str()) == 0);
  json manifest2 = json::parse(slurp("cli_out/flagthreads.manifest.json"));
  CHECK(manifest2["threads"].get<int>() == 2);
}

TEST_CASE("cli: verify writes a schema-valid report") {
  fs::create_directories("cli_out");
  RunResult r = run_cli("verify --suite weil --phi 0,0,1 --p-max 40 --out cli_out/weil");
  CHECK(r.exit_code == 0);
  json report = json::parse(slurp("cli_out/weil.json"));
  std::string err;
  CHECK_MESSAGE(weyl::test::validate_schema(load_schema("verify_report.schema.json"),
                                            report, &err),
                err);
  CHECK(report["passed"].get<bool>());
  CHECK(report["failures"].get<std::uint64_t>() == 0);
}

TEST_CASE("cli: witness run produces coherent files") {
  fs::create_directories("cli_out");
  RunResult r = run_cli(
      "witness --phi 0,0,1 --tau 0.1 --alpha2 sqrt2m1 --p-min 257 --p-max 600 "
      "--out cli_out/w");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("p=577") != std::string::npos);

  std::string csv = slurp("cli_out/w.csv");
  CHECK(csv.rfind("p,a1,a2,P,f_abs,target,ratio,exponent\r\n", 0) == 0);
  CHECK(csv.find("\r\n577,") != std::string::npos);

  json j = json::parse(slurp("cli_out/w.json"));
  std::string err;
  CHECK_MESSAGE(weyl::test::validate_schema(load_schema("witness_report.schema.json"), j, &err),
                err);
  REQUIRE(j["reports"].size() == 1);
  CHECK(j["reports"][0]["p"].get<std::uint64_t>() == 577);
  CHECK(j["reports"][0]["exponent"].get<double>() >= 0.60);
  CHECK_FALSE(j["slope_valid"].get<bool>());  // single point, no fit

  json manifest = json::parse(slurp("cli_out/w.manifest.json"));
  std::string err2;
  CHECK_MESSAGE(weyl::test::validate_schema(load_schema("run_manifest.schema.json"),
                                            manifest, &err2),
                err2);
  // Hashes in the manifest match the files on disk.
  for (auto it = manifest["outputs"].begin(); it != manifest["outputs"].end(); ++it) {
    std::string content = slurp(it.key());
    CHECK(it.value()["bytes"].get<std::uint64_t>() == content.size());
    CHECK(it.value()["sha256"].get<std::string>() == sha256_hex(content));
  }
}

TEST_CASE("cli: witness with rational alpha2 reports the degenerate case") {
  fs::create_directories("cli_out");
  RunResult r = run_cli(
      "witness --phi 0,0,1 --tau 0.1 --alpha2 0.5 --p-min 257 --p-max 300 "
      "--out cli_out/degenerate");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("no witnesses") != std::string::npos);
  json j = json::parse(slurp("cli_out/degenerate.json"));
  CHECK(j["reports"].empty());
  CHECK_FALSE(j["diagnostic"].get<std::string>().empty());
}
