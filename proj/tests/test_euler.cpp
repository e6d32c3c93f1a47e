#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "psilab/arith.hpp"
#include "psilab/euler.hpp"
#include "psilab/zeta.hpp"

using namespace psilab;
using std::complex;

namespace {
// h_1(1) from a 40-digit evaluation (truncated product to 10^9 plus a
// certified tail), frozen here to 17 digits.
constexpr double kH1at1 = 1.0706237641927361;

EulerProductSpec spec_for(int n, uint64_t P) {
  EulerProductSpec s;
  s.n = n;
  s.prime_cutoff = P;
  return s;
}
}  // namespace

TEST_CASE("h_1(1) reproduces the reference constant within its bound") {
  for (uint64_t P : {100000ull, 1000000ull}) {
    const ApproxComplex h = h_n_eval(spec_for(1, P), {1.0, 0.0}, 64);
    CAPTURE(P);
    CHECK(std::abs(h.value - complex<double>(kH1at1, 0)) <= h.err);
    CHECK(std::fabs(h.value.imag()) < 1e-18);
  }
}

TEST_CASE("truncation error shrinks with the cutoff and stays inside bounds") {
  const ApproxComplex small = h_n_eval(spec_for(1, 10000), {1.0, 0.0}, 64);
  const ApproxComplex mid = h_n_eval(spec_for(1, 100000), {1.0, 0.0}, 64);
  const ApproxComplex big = h_n_eval(spec_for(1, 1000000), {1.0, 0.0}, 64);
  CHECK(std::abs(small.value - big.value) <= small.err);
  CHECK(std::abs(mid.value - big.value) <= mid.err);
  CHECK(big.err < mid.err);
  CHECK(mid.err < small.err);
}

TEST_CASE("far right of the half-plane the product is nearly 1") {
  const ApproxComplex h10 = h_n_eval(spec_for(1, 10000), {10.0, 0.0}, 64);
  CHECK(std::abs(h10.value - complex<double>(1, 0)) < std::ldexp(1.0, -9));
  const ApproxComplex h20 = h_n_eval(spec_for(1, 10000), {20.0, 0.0}, 64);
  CHECK(std::abs(h20.value - complex<double>(1, 0)) < std::ldexp(1.0, -19));
}

TEST_CASE("index recursion: zeta(2^n(s+1)) h_n(s) is n-invariant") {
  std::mt19937 rng(4242u);
  std::uniform_real_distribution<double> sig(-0.4, 2.0);
  std::uniform_real_distribution<double> tau(0.0, 10.0);
  EvalParams ep;
  ep.working_precision_bits = 64;
  for (int n = 2; n <= 4; ++n) {
    for (int i = 0; i < 4; ++i) {
      const complex<double> s{sig(rng), tau(rng)};
      CAPTURE(n);
      CAPTURE(s.real());
      CAPTURE(s.imag());
      const ApproxComplex lhs =
          zeta(std::ldexp(1.0, n) * (s + 1.0), ep) *
          h_n_eval(spec_for(n, 100000), s, 64);
      const ApproxComplex rhs =
          zeta(std::ldexp(1.0, n + 1) * (s + 1.0), ep) *
          h_n_eval(spec_for(n + 1, 100000), s, 64);
      CHECK(std::abs(lhs.value - rhs.value) <= lhs.err + rhs.err + 1e-15);
    }
  }
}

TEST_CASE("conjugation symmetry") {
  const ApproxComplex up = h_n_eval(spec_for(2, 10000), {0.3, 7.0}, 64);
  const ApproxComplex dn = h_n_eval(spec_for(2, 10000), {0.3, -7.0}, 64);
  CHECK(dn.value == std::conj(up.value));
  CHECK(dn.err == up.err);
}

TEST_CASE("domain and parameter validation") {
  // half-plane edge: Re s must exceed -1 + 2^{-n} + margin
  CHECK_THROWS_AS(h_n_eval(spec_for(1, 10000), {-0.5, 0.0}, 64),
                  std::domain_error);
  CHECK_NOTHROW(h_n_eval(spec_for(2, 10000), {-0.5, 0.0}, 64));
  CHECK_THROWS_AS(h_n_eval(spec_for(0, 10000), {1.0, 0.0}, 64),
                  std::invalid_argument);
  CHECK_THROWS_AS(h_n_eval(spec_for(31, 10000), {1.0, 0.0}, 64),
                  std::invalid_argument);
  CHECK_THROWS_AS(h_n_eval(spec_for(1, 50), {1.0, 0.0}, 64),
                  std::invalid_argument);
  CHECK_THROWS_AS(h_n_eval(spec_for(1, 10000), {1.0, 0.0}, 80),
                  std::invalid_argument);

  EulerProductSpec tight = spec_for(1, 1000);
  tight.target_tolerance = 1e-20;
  CHECK_THROWS_AS(h_n_eval(tight, {1.0, 0.0}, 64), eval_error);
}

TEST_CASE("factorization check passes on and off the real axis") {
  const ArithTable table = build_arith_table(100000);
  const EulerProductSpec sp1 = spec_for(1, 100000);

  const FactorizationReport at3 =
      verify_factorization(1, {3.0, 0.0}, 100000, sp1, table);
  CHECK(at3.pass);
  CHECK(at3.abs_diff < 1e-9);

  const FactorizationReport off =
      verify_factorization(2, {2.0, 5.0}, 100000, spec_for(2, 100000), table);
  CHECK(off.pass);

  // the combined product F is n-independent
  const FactorizationReport n3 =
      verify_factorization(3, {3.0, 0.0}, 100000, spec_for(3, 100000), table);
  CHECK(std::abs(at3.lhs.value - n3.lhs.value) <= at3.lhs.err + n3.lhs.err);

  CHECK_THROWS_AS(
      verify_factorization(1, {0.5, 0.0}, 1000, sp1, table),
      std::domain_error);
  CHECK_THROWS_AS(
      verify_factorization(2, {3.0, 0.0}, 1000, sp1, table),
      std::invalid_argument);
}

TEST_CASE("boundary growth scan") {
  const std::vector<double> ts{0.0, 1.0, 5.0};
  const BoundaryScanReport rep =
      boundary_growth_scan(1.0 / 3.0, ts, 9, 10000);
  CHECK(rep.rows.size() == 3);
  CHECK(std::isfinite(rep.c_hat));
  for (const BoundaryScanRow& r : rep.rows) {
    CHECK(r.abs_h > 0);
    CHECK(r.err >= 0);
  }

  // sub-minimal n is rejected and the message names the smallest usable n
  try {
    boundary_growth_scan(1.0 / 3.0, ts, 2, 10000);
    FAIL("expected rejection of n = 2");
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()).find("3") != std::string::npos);
  }
  CHECK_THROWS_AS(boundary_growth_scan(0.4, ts, 9, 10000),
                  std::invalid_argument);
  CHECK_THROWS_AS(boundary_growth_scan(1.0 / 3.0, {}, 9, 10000),
                  std::invalid_argument);

  // the estimate is stable under halving the cutoff (coarse factor-4 band)
  const BoundaryScanReport rep2 =
      boundary_growth_scan(1.0 / 3.0, ts, 9, 20000);
  CHECK(std::fabs(rep2.c_hat) < 4 * std::fabs(rep.c_hat) + 1e-9);
  CHECK(std::fabs(rep.c_hat) < 4 * std::fabs(rep2.c_hat) + 1e-9);
}
