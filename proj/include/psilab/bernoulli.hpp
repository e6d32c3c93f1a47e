#pragma once

// Bernoulli numbers B_0..B_60, computed once, exactly, from the defining
// recurrence sum_{j<=m} C(m+1,j) B_j = 0 in arbitrary-precision rationals.
// They feed the Euler-Maclaurin corrections for zeta and Stirling's series
// for log Gamma at every precision rung.

#include <gmpxx.h>

#include "psilab/real_ladder.hpp"

namespace psilab {

inline constexpr int kMaxBernoulli = 60;

// B_n for n <= kMaxBernoulli (odd n > 1 give 0).
const mpq_class& bernoulli_exact(int n);

// Exact conversion of an arbitrary-size rational into a rung type:
// numerator and denominator are accumulated limb by limb (each step a
// multiply-add by 2^64, exact until the mantissa fills) and divided once.
template <class Real>
Real real_from_mpz(const mpz_class& z) {
  size_t n = mpz_size(z.get_mpz_t());
  Real r = 0;
  const Real base = Real(18446744073709551616.0);  // 2^64, exact
  for (size_t i = n; i-- > 0;)
    r = r * base + Real(mpz_getlimbn(z.get_mpz_t(), static_cast<mp_size_t>(i)));
  return mpz_sgn(z.get_mpz_t()) < 0 ? -r : r;
}

template <class Real>
Real real_from_mpq(const mpq_class& q) {
  return real_from_mpz<Real>(q.get_num()) / real_from_mpz<Real>(q.get_den());
}

template <class Real>
Real bernoulli_real(int n) {
  return real_from_mpq<Real>(bernoulli_exact(n));
}

}  // namespace psilab
