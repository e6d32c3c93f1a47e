#pragma once

// Truncated Euler products h_n(s) with provable tail bounds, the
// factorization check F(s) = zeta(s) zeta(2^n(s+1)) h_n(s) / zeta(s+1)
// against the Dirichlet side, and the growth scan of |h_n| near the
// convergence boundary Re s = -1 + 2^{-n}.
//
// Local factor at p (M = 2^n, w = p^{-(s+1)}):
//   1 + (p/(p+1)) [ (1/p) w (1 - w^{M-1})/(1 - w) - w^M ],
// the closed geometric form of 1 + sum_{m=1}^{M-1} p^{-ms-m-1}/(1+1/p)
//                                - p^{-Ms-M}/(1+1/p).

#include <complex>
#include <cstdint>
#include <vector>

#include "psilab/approx.hpp"
#include "psilab/arith.hpp"

namespace psilab {

struct EulerProductSpec {
  int n = 1;                      // the 2^n index
  uint64_t prime_cutoff = 100000; // P; 10^6 for reference/acceptance runs
  double target_tolerance = 0;    // >0: error if the bound exceeds it
};

// Half-plane of convergence is Re s > -1 + 2^{-n}; evaluation requires an
// extra documented margin.
inline constexpr double kEulerHalfPlaneMargin = 0.01;

// Truncated product over p <= P with tail + rounding error bound. The tail
// majorant per prime is |local - 1| <= p^{-(2+sigma)}/(1 - 2^{-(1+sigma)})
//                                      + p^{-M(1+sigma)},
// summed over p > P through pi(u) <= 1.26 u / log u by partial summation.
ApproxComplex h_n_eval(const EulerProductSpec& spec, std::complex<double> s,
                       int precision_bits = 64);

struct FactorizationReport {
  int n = 1;
  std::complex<double> s;
  uint64_t series_limit = 0;
  ApproxComplex lhs;          // zeta(s) zeta(2^n(s+1)) h_n(s) / zeta(s+1)
  ApproxComplex rhs;          // sum_{m<=N} r(m) m^{-s}
  double dirichlet_tail = 0;  // N^{1-sigma}/(sigma-1), r <= 1
  double slack = 0;
  double tolerance = 0;       // slack + tail + both error bounds
  double abs_diff = 0;
  bool pass = false;
};

FactorizationReport verify_factorization(int n, std::complex<double> s,
                                         uint64_t series_limit,
                                         const EulerProductSpec& spec,
                                         const ArithTable& table,
                                         double slack = 1e-5);

struct BoundaryScanRow {
  double t;
  double abs_h;
  double err;
};

struct BoundaryScanReport {
  double delta = 0;
  int n = 0;
  double c_hat = 0;  // delta * max_t log |h_n(-1+delta+it)|
  std::vector<BoundaryScanRow> rows;
};

// Growth scan of |h_n(-1+delta+it)| across t samples. Requires
// n > log2(2/delta); rejects otherwise naming the minimal admissible n.
BoundaryScanReport boundary_growth_scan(double delta,
                                        const std::vector<double>& t_samples,
                                        int n, uint64_t prime_cutoff = 100000);

}  // namespace psilab
