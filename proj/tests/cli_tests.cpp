#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "oqsim/circuit.hpp"

namespace {

std::string cli_path() {
  const char* p = std::getenv("OQSIM_CLI");
  REQUIRE_MESSAGE(p != nullptr, "OQSIM_CLI must point at the harness binary");
  return p;
}

int run(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " >/dev/null 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("build writes a parseable circuit file") {
  REQUIRE(run("build --variant exact --n 4 --out /tmp/oqsim_cli_build.txt") == 0);
  const std::string text = slurp("/tmp/oqsim_cli_build.txt");
  CHECK(text.rfind("QUBITS 4\n", 0) == 0);
  const oqsim::Circuit c = oqsim::parse_text(text);
  CHECK(c.num_qubits() == 4);
  CHECK(c.size() == 4 + 6);  // H cascade plus all controlled phases
}

TEST_CASE("usage errors exit with code 2, resource limits with 3") {
  CHECK(run("build --variant exact --n 0") == 2);
  CHECK(run("build --variant bogus --n 4") == 2);
  CHECK(run("nonsense") == 2);
  CHECK(run("reduce --n 6 --m 2 --samples 4") == 2);  // missing required seed
  CHECK(run("error-sweep --variant exact --n 15 --m 1 --mode exhaustive") == 3);
  CHECK(run("factor --N 85 --g 2 --seed 1") == 3);  // register too wide
}

TEST_CASE("seeded commands are byte-identical across reruns") {
  const std::string a = "/tmp/oqsim_cli_sweep_a.csv", b = "/tmp/oqsim_cli_sweep_b.csv";
  REQUIRE(run("error-sweep --variant optimistic --n 8 --m 2 --mode sampled --samples 60 --seed 7 --out " + a) == 0);
  REQUIRE(run("error-sweep --variant optimistic --n 8 --m 2 --mode sampled --samples 60 --seed 7 --out " + b) == 0);
  CHECK(slurp(a) == slurp(b));

  REQUIRE(run("reduce --n 6 --m 2 --samples 40 --seed 11 --out /tmp/oqsim_cli_red_a.csv") == 0);
  REQUIRE(run("reduce --n 6 --m 2 --samples 40 --seed 11 --out /tmp/oqsim_cli_red_b.csv") == 0);
  CHECK(slurp("/tmp/oqsim_cli_red_a.csv") == slurp("/tmp/oqsim_cli_red_b.csv"));
  CHECK(slurp("/tmp/oqsim_cli_red_a.csv.json") == slurp("/tmp/oqsim_cli_red_b.csv.json"));
}

TEST_CASE("factor emits the summary json and histogram") {
  REQUIRE(run("factor --N 15 --g 7 --seed 3 --trials 50 --out /tmp/oqsim_cli_f") == 0);
  const std::string j = slurp("/tmp/oqsim_cli_f.json");
  CHECK(j.find("\"p_success\"") != std::string::npos);
  CHECK(j.find("\"p0_baseline\"") != std::string::npos);
  CHECK(j.find("\"histogram_csv_path\"") != std::string::npos);
  const std::string h = slurp("/tmp/oqsim_cli_f_hist.csv");
  CHECK(h.rfind("outcome,probability,sampled\n", 0) == 0);
}

TEST_CASE("empty sweep emits only the header") {
  REQUIRE(run("error-sweep --variant exact --out /tmp/oqsim_cli_empty.csv") == 0);
  CHECK(slurp("/tmp/oqsim_cli_empty.csv") == "n,m,avg_error,bound,per_state_max\n");
}

TEST_CASE("sweep json format") {
  REQUIRE(run("error-sweep --variant blocked --n 6 --m 2 --format json --out /tmp/oqsim_cli_sweep.json") == 0);
  const std::string j = slurp("/tmp/oqsim_cli_sweep.json");
  CHECK(j.rfind("[", 0) == 0);
  CHECK(j.find("\"avg_error\"") != std::string::npos);
  CHECK(j.find("\"bound\"") != std::string::npos);
}

TEST_CASE("jobs option does not change sweep output") {
  const std::string a = "/tmp/oqsim_cli_jobs_a.csv", b = "/tmp/oqsim_cli_jobs_b.csv";
  REQUIRE(run("error-sweep --variant blocked --n 4 6 --m 1 2 3 --out " + a) == 0);
  REQUIRE(run("error-sweep --variant blocked --n 4 6 --m 1 2 3 --jobs 4 --out " + b) == 0);
  CHECK(slurp(a) == slurp(b));
}
