// End-to-end checks of the psilab binary named by PSILAB_BIN (falling back
// to ./build/psilab), run from the repository root.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "doctest.h"

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

std::string binary() {
  if (const char* env = std::getenv("PSILAB_BIN"); env && *env) return env;
  return "./build/psilab";
}

RunResult run(const std::string& args, const std::string& env_prefix = "") {
  const std::string cmd =
      env_prefix + "\"" + binary() + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string line;
  while (std::getline(is, line)) out.push_back(line);
  return out;
}

bool has_line(const std::string& s, const std::string& wanted) {
  for (const std::string& l : lines(s))
    if (l == wanted) return true;
  return false;
}

// first data row (not starting with '#', not the header)
std::string first_row(const std::string& s) {
  bool header_seen = false;
  for (const std::string& l : lines(s)) {
    if (!l.empty() && l[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    return l;
  }
  return "";
}

std::string field(const std::string& row, std::size_t idx) {
  std::vector<std::string> f;
  std::string cur;
  for (char c : row) {
    if (c == ',') {
      f.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  f.push_back(cur);
  REQUIRE(idx < f.size());
  return f[idx];
}

}  // namespace

TEST_CASE("riesz subcommand emits documented exact values") {
  const RunResult r = run("riesz --k 1 --x 4");
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "x,S_k_exact_num,S_k_exact_den,S_k_float"));
  CHECK(has_line(r.out, "4,61,48,1.2708333333333333"));
  CHECK(lines(r.out).front().rfind("# psilab ", 0) == 0);
  CHECK(has_line(r.out, "# command: riesz"));

  // at x = 1 every k >= 1 weight vanishes
  const RunResult one = run("riesz --k 1 --x 1");
  CHECK(one.code == 0);
  CHECK(first_row(one.out) == "1,0,1,0");
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("riesz --x 4").code == 2);            // missing required --k
  CHECK(run("riesz --k 1").code == 2);            // no evaluation point
  CHECK(run("nonsense").code == 2);               // unknown subcommand
  CHECK(run("verify-factorization --s-re 0.5 --N 100 --P 2000").code == 2);
  CHECK(run("jlambda --lambda 1.5 --T 100").code == 2);
  CHECK(run("zeta --s-re 1 --s-im 0").code == 2);  // the pole
  CHECK(run("--help").code == 0);
  CHECK(run("--version").code == 0);
}

TEST_CASE("factorization check passes and is index-independent") {
  const std::string common = " --s-re 3 --N 2000 --P 20000";
  const RunResult r1 = run("verify-factorization --n 1" + common);
  const RunResult r3 = run("verify-factorization --n 3" + common);
  CHECK(r1.code == 0);
  CHECK(r3.code == 0);
  const std::string row1 = first_row(r1.out);
  const std::string row3 = first_row(r3.out);
  CHECK(field(row1, 9) == "1");  // pass flag
  CHECK(field(row3, 9) == "1");
  const double f1 = std::strtod(field(row1, 3).c_str(), nullptr);
  const double f3 = std::strtod(field(row3, 3).c_str(), nullptr);
  CHECK(f1 == doctest::Approx(f3).epsilon(1e-8));
}

TEST_CASE("zeta subcommand reports certified classical values") {
  const RunResult r = run("zeta --s-re 2");
  CHECK(r.code == 0);
  CHECK(first_row(r.out).rfind("1.6449340668482264,", 0) == 0);

  // -(1/2) log(2 pi) = -0.91893853320467274...; the default 53-bit pass
  // certifies ~2e-9, so pin 14 digits only
  const RunResult d = run("zeta --s-re 0 --derivative");
  CHECK(d.code == 0);
  CHECK(first_row(d.out).rfind("-0.91893853320467", 0) == 0);
}

TEST_CASE("data-file and resource failures use distinct exit codes") {
  {
    std::ofstream bad("/tmp/psilab_cli_bad.txt", std::ios::trunc);
    bad << "garbage\n";
  }
  CHECK(run("explicit --k 2 --x 100 --max-zeros 5",
            "PSILAB_ZEROS=/tmp/psilab_cli_bad.txt ")
            .code == 4);
  CHECK(run("jlambda --lambda 0.5 --T 100",
            "PSILAB_ZEROS=/tmp/psilab_cli_missing.txt ")
            .code == 4);
  CHECK(run("jlambda --lambda 0.5 --T 5000").code == 3);  // beyond coverage
}

TEST_CASE("explicit subcommand summarises the comparison") {
  const RunResult r = run("explicit --k 2 --n 2 --x 100 --max-zeros 5");
  CHECK(r.code == 0);
  CHECK(has_line(r.out,
                 "x,S_k,main,E_k,Y,scaled_Y,discrepancy,T_used,zero_count"));
  const std::string row = first_row(r.out);
  CHECK(field(row, 0) == "100");
  CHECK(field(row, 8) == "5");
  CHECK(r.out.find("# fraction_improved: ") != std::string::npos);
  CHECK(r.out.find("# sign_changes_E: ") != std::string::npos);
  CHECK(r.out.find("# zeros_fnv1a64: ") != std::string::npos);
}

TEST_CASE("every subcommand is byte-reproducible") {
  const std::vector<std::string> cmds = {
      "riesz --k 2 --x-max 30",
      "verify-factorization --s-re 3 --N 2000 --P 20000",
      "explicit --k 2 --n 2 --x 100 --max-zeros 5",
      "jlambda --lambda 0.5 --T 100 --T 500 --T 1000 --fit",
      "exponent-fit --k 2 --x-min 100 --x-max 10000 --points 6",
      "tail-diagnostic --k 2",
      "boundary-scan --delta 0.25 --n 4 --t 1 --t 2 --P 20000",
      "zeta --s-re 0.5 --s-im 25 --derivative --precision 64",
      "tabulate",
  };
  for (const std::string& cmd : cmds) {
    CAPTURE(cmd);
    const RunResult a = run(cmd);
    const RunResult b = run(cmd);
    CHECK(a.code == 0);
    CHECK(b.code == a.code);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
  }
}
