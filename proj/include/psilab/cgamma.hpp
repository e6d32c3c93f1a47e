#pragma once

// log Gamma and digamma on the complex plane by Stirling's series with
// argument shift, templated over the precision ladder. The returned
// logarithm is the analytic branch on Re z > 0 (real on the positive
// axis); for Re z <= 0 it is correct modulo 2*pi*i, which is enough for
// every caller here (chi exponentiates it).
//
// Remainder bound after J terms of Stirling (|arg w| < pi/2 after the
// shift): |R_J| <= |B_{2J+2}| / ((2J+1)(2J+2)) * |w|^{-(2J+1)} * sec^{2J+2}(arg w / 2),
// and sec(arg/2) <= sqrt(2) on the shifted domain.

#include <array>
#include <stdexcept>

#include "psilab/bernoulli.hpp"
#include "psilab/real_ladder.hpp"

namespace psilab {

template <class Real>
struct CValue {
  cplx<Real> value;
  Real err;  // absolute bound on |value - true|
};

namespace detail {

// Stirling depth / shift threshold per rung: deeper series and a larger
// shift as the mantissa grows.
template <class Real>
constexpr int stirling_terms() {
  return real_traits<Real>::mantissa_bits > 100 ? 29 : 15;
}
template <class Real>
constexpr int stirling_shift() {
  const int bits = real_traits<Real>::mantissa_bits;
  return bits > 100 ? 30 : (bits > 53 ? 16 : 12);
}

template <class Real>
const Real* stirling_coeffs() {
  // c_j = B_{2j} / ((2j)(2j-1)), j = 1..29
  static const auto table = [] {
    std::array<Real, 30> t{};
    for (int j = 1; j <= 29; ++j) {
      mpq_class c = bernoulli_exact(2 * j) / mpq_class(2 * j * (2 * j - 1));
      t[static_cast<size_t>(j)] = real_from_mpq<Real>(c);
    }
    return t;
  }();
  return table.data();
}

}  // namespace detail

template <class Real>
bool is_nonpositive_integer(const cplx<Real>& z) {
  if (z.imag() != Real(0)) return false;
  Real r = z.real();
  if (r > Real(0)) return false;
  if (r < Real(-1e15)) return false;  // beyond exact integer range of callers
  Real fl = r - Real(static_cast<long long>(r));  // r <= 0: truncation toward 0
  return fl == Real(0);
}

template <class Real>
CValue<Real> clgamma(cplx<Real> z) {
  if (is_nonpositive_integer(z))
    throw std::domain_error("clgamma: pole at nonpositive integer");
  const int J = detail::stirling_terms<Real>();
  const int target = detail::stirling_shift<Real>();
  const Real* c = detail::stirling_coeffs<Real>();
  const Real eps = real_traits<Real>::eps;

  // Shift z rightwards until Stirling is accurate, collecting log factors.
  cplx<Real> shift_sum{0, 0};
  Real abs_sum = 0;
  int m = 0;
  if (z.real() < Real(target)) {
    m = static_cast<int>(static_cast<double>(Real(target) - z.real())) + 1;
    for (int i = 0; i < m; ++i) {
      cplx<Real> zi = z + cplx<Real>(Real(i), 0);
      cplx<Real> lg = clog(zi);
      shift_sum += lg;
      abs_sum += cabs(lg);
    }
  }
  cplx<Real> w = z + cplx<Real>(Real(m), 0);

  cplx<Real> lw = clog(w);
  cplx<Real> res = (w - cplx<Real>(Real(0.5), 0)) * lw - w;
  const Real half_log_2pi = rm::log_(2 * pi_v_<Real>()) / 2;
  res += cplx<Real>(half_log_2pi, 0);
  abs_sum += cabs(res);

  cplx<Real> winv = cplx<Real>(1, 0) / w;
  cplx<Real> winv2 = winv * winv;
  cplx<Real> wp = winv;  // w^{-(2j-1)}
  for (int j = 1; j <= J; ++j) {
    cplx<Real> term = c[j] * wp;
    res += term;
    abs_sum += cabs(term);
    wp *= winv2;
  }

  // |B_{2J+2}|/((2J+1)(2J+2)) * |w|^{-(2J+1)} * 2^{J+1}
  Real bnext = rm::fabs_(bernoulli_real<Real>(2 * J + 2));
  Real pw = rm::pow_(cabs(w), Real(-(2 * J + 1)));
  Real remainder = bnext / Real((2 * J + 1) * (2 * J + 2)) * pw *
                   rm::pow_(Real(2), Real(J + 1));

  res -= shift_sum;
  return {res, remainder + 4 * eps * abs_sum};
}

template <class Real>
CValue<Real> cdigamma(cplx<Real> z) {
  if (is_nonpositive_integer(z))
    throw std::domain_error("cdigamma: pole at nonpositive integer");
  const int J = detail::stirling_terms<Real>();
  const int target = detail::stirling_shift<Real>();
  const Real eps = real_traits<Real>::eps;

  cplx<Real> shift_sum{0, 0};
  Real abs_sum = 0;
  int m = 0;
  if (z.real() < Real(target)) {
    m = static_cast<int>(static_cast<double>(Real(target) - z.real())) + 1;
    for (int i = 0; i < m; ++i) {
      cplx<Real> inv = cplx<Real>(1, 0) / (z + cplx<Real>(Real(i), 0));
      shift_sum += inv;
      abs_sum += cabs(inv);
    }
  }
  cplx<Real> w = z + cplx<Real>(Real(m), 0);

  // psi(w) = log w - 1/(2w) - sum_j B_{2j} / (2j w^{2j}) + R
  cplx<Real> winv = cplx<Real>(1, 0) / w;
  cplx<Real> winv2 = winv * winv;
  cplx<Real> res = clog(w) - Real(0.5) * winv;
  abs_sum += cabs(res);
  cplx<Real> wp = winv2;
  for (int j = 1; j <= J; ++j) {
    cplx<Real> term = (bernoulli_real<Real>(2 * j) / Real(2 * j)) * wp;
    res -= term;
    abs_sum += cabs(term);
    wp *= winv2;
  }
  Real bnext = rm::fabs_(bernoulli_real<Real>(2 * J + 2));
  Real remainder = bnext / Real(2 * J + 2) *
                   rm::pow_(cabs(w), Real(-(2 * J + 2))) *
                   rm::pow_(Real(2), Real(J + 2));

  res -= shift_sum;
  return {res, remainder + 4 * eps * abs_sum};
}

}  // namespace psilab
