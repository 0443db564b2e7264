// Integration tests for the binrow binary; the harness passes its path in
// the BINROW_CLI environment variable.
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("BINROW_CLI");
  REQUIRE(bin != nullptr);
  std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("row subcommand emits the documented JSON") {
  RunResult r = run_cli("row --n 12 --p 2 --format json");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "{\"n\":12,\"p\":2,\"entries\":{\"2\":4,\"3\":2,\"4\":5,\"5\":2}}");
  RunResult csv = run_cli("row --n 12");
  CHECK(csv.out == "n,k,count\n12,2,4\n12,3,2\n12,4,5\n12,5,2\n");
  RunResult brute = run_cli("row --n 12 --bruteforce --format json");
  CHECK(brute.out == r.out);
  // 5 = (12)_3, s_3(5) = 3, all six entries nonzero mod 3
  RunResult p3 = run_cli("row --n 5 --p 3 --format json");
  CHECK(p3.out == "{\"n\":5,\"p\":3,\"entries\":{\"3\":6}}");
}

TEST_CASE("row --howard and --mu") {
  RunResult h = run_cli("row --n 12 --howard");
  CHECK(h.exit_code == 0);
  CHECK(h.out ==
        "n,j,formula,ratio\n12,1,1/2,1/2\n12,2,5/4,5/4\n12,3,1/2,1/2\n");
  RunResult m = run_cli("row --n 12 --mu");
  CHECK(m.exit_code == 0);
  CHECK(m.out.find("18/13,18/13") != std::string::npos);
}

TEST_CASE("valuation subcommand") {
  RunResult r = run_cli("valuation --n 12 --t 5 --format json");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "{\"n\":12,\"t\":5,\"p\":2,\"nu\":3,\"lucas\":0}");
  RunResult c = run_cli("valuation --n 7 --t 3");
  CHECK(c.out == "n,t,p,nu,lucas\n7,3,2,0,1\n");
}

TEST_CASE("gf-verify exits 0 with an empty report") {
  RunResult r = run_cli("gf-verify --lambda-max 8 --format json");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "[]");
  RunResult csv = run_cli("gf-verify --lambda-max 3 --trivariate-max 2");
  CHECK(csv.exit_code == 0);
  CHECK(csv.out == "family,lambda,k,l,expected,got\n");
}

TEST_CASE("clt-scan trivial threshold") {
  RunResult r = run_cli("clt-scan --lambda 4 --epsilon 1.5 --mode full");
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "lambda,epsilon,mode,size,bad_count,fraction,fraction_sqrtlambda\n"
        "4,1.5,full,16,0,0/1,0\n");
}

TEST_CASE("outputs are byte-stable, including under threads and sampling") {
  RunResult a = run_cli("clt-scan --lambda 8 --epsilon 0.05 --threads 1");
  RunResult b = run_cli("clt-scan --lambda 8 --epsilon 0.05 --threads 4");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  RunResult s1 = run_cli("clt-scan --lambda 12 --epsilon 0.05 --mode sample --count 200 --seed 42");
  RunResult s2 = run_cli("clt-scan --lambda 12 --epsilon 0.05 --mode sample --count 200 --seed 42");
  CHECK(s1.exit_code == 0);
  CHECK(s1.out == s2.out);
  RunResult l1 = run_cli("lemma-ratios --lambda-grid 6:8 --u-rules 0,isq --threads 2");
  RunResult l2 = run_cli("lemma-ratios --lambda-grid 6:8 --u-rules 0,isq");
  CHECK(l1.exit_code == 0);
  CHECK(l1.out == l2.out);
}

TEST_CASE("second-moment spot value") {
  RunResult r = run_cli("second-moment --lambda 1 --u-grid 0");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "lambda,u,v,w,E,normalized\n1,0,0.5,0,13/8,0.40625\n");
}

TEST_CASE("u-rule tokens resolve against floor(sqrt(lambda))") {
  RunResult r = run_cli("lemma-ratios --lambda-grid 9 --u-rules -isq,2isq");
  CHECK(r.exit_code == 0);
  // isq = 3 at lambda 9
  CHECK(r.out.find("first_moment,9,-3,") != std::string::npos);
  CHECK(r.out.find("first_moment,9,6,") != std::string::npos);
}

TEST_CASE("singmaster spot value and scan") {
  RunResult r = run_cli("singmaster --N 4 --j 0");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "N,j,p,average\n4,0,2,11/12\n");
  RunResult s = run_cli("singmaster --powers 4,8 --j 0 --format json");
  CHECK(s.exit_code == 0);
  CHECK(s.out.find("\"N\":16") != std::string::npos);
  CHECK(s.out.find("\"N\":256") != std::string::npos);
}

TEST_CASE("moments dump") {
  RunResult r = run_cli("moments --lambda 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("m,1,1,,1/1\n") != std::string::npos);
  CHECK(r.out.find("m,1,2,,5/2\n") != std::string::npos);
}

TEST_CASE("file output and the output-directory override") {
  const char* bin = std::getenv("BINROW_CLI");
  REQUIRE(bin != nullptr);
  std::string dir = "/tmp/binrow_cli_out";
  std::string cleanup = "rm -rf " + dir + " && mkdir -p " + dir;
  REQUIRE(std::system(cleanup.c_str()) == 0);
  std::string cmd = std::string("BINROW_OUTPUT_DIR=") + dir + " " + bin +
                    " row --n 12 --format json --output row.json";
  REQUIRE(std::system(cmd.c_str()) == 0);
  FILE* f = std::fopen((dir + "/row.json").c_str(), "rb");
  REQUIRE(f != nullptr);
  char buf[256] = {0};
  size_t got = fread(buf, 1, sizeof(buf) - 1, f);
  std::fclose(f);
  CHECK(std::string(buf, got) ==
        "{\"n\":12,\"p\":2,\"entries\":{\"2\":4,\"3\":2,\"4\":5,\"5\":2}}");
}

TEST_CASE("exit codes") {
  CHECK(run_cli("row --no-such-flag").exit_code == 2);
  CHECK(run_cli("clt-scan --lambda 25 --epsilon 0.1").exit_code == 1);
  CHECK(run_cli("valuation --n 3 --t 9").exit_code == 1);
  CHECK(run_cli("row --n 5 --p 6").exit_code == 1);
  CHECK(run_cli("nonexistent-command").exit_code == 2);
  // seed is required in sample mode
  CHECK(run_cli("clt-scan --lambda 10 --mode sample --count 10").exit_code == 2);
}
