#pragma once

// Exact integer/rational layer: linear sieve for mu, psi and smallest
// prime factors, exact Riesz means S_k(x) of l/psi(l) in arbitrary-size
// rationals, a compensated float fast path, and partial Dirichlet sums of
// the ratio r(n) = n/psi(n).

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <vector>

#include "psilab/approx.hpp"

namespace psilab {

// psi(n) = n prod_{p|n} (1 + 1/p) (Dedekind totient), mu the Moebius
// function, both built multiplicatively in one O(N) linear sieve pass.
struct ArithTable {
  uint64_t limit = 0;
  std::vector<uint32_t> spf;  // smallest prime factor; spf[1] = 1
  std::vector<int8_t> mu;
  std::vector<uint64_t> psi;

  uint64_t psi_at(uint64_t n) const { return psi[n]; }
  int mu_at(uint64_t n) const { return mu[n]; }
  // r(n) = n / psi(n) in (0, 1]; r(1) = 1, r(n) < 1 for n >= 2.
  double ratio(uint64_t n) const {
    return static_cast<double>(n) / static_cast<double>(psi[n]);
  }
};

// Documented memory limit: 13 bytes per index, so 10^8 is the hard cap;
// tables up to 10^7 are routine on desktop memory.
inline constexpr uint64_t kArithTableMax = 100000000;

ArithTable build_arith_table(uint64_t N);

// S_k(x) = (1/k!) sum_{l <= x} (l/psi(l)) (1 - l/x)^k, exact.
// x may be any positive rational; k <= 32.
mpq_class riesz_mean(int k, const mpq_class& x, const ArithTable& table);

// Compensated double-precision path with a validated error bound.
FloatVal riesz_mean_float(int k, double x, const ArithTable& table);

struct DirichletPartial {
  ApproxComplex sum;       // sum_{n<=N} r(n) n^{-s}, rounding bound only
  double tail_bound = 0;   // |sum_{n>N} r(n) n^{-s}| <= N^{1-Re s}/(Re s - 1)
  bool tail_valid = false; // true iff Re s > 1 (r(n) <= 1 since psi(n) >= n)
};

DirichletPartial dirichlet_partial(std::complex<double> s, uint64_t N,
                                   const ArithTable& table);

}  // namespace psilab
