#pragma once

// The precision ladder: every analytic kernel is templated on a real type
// and instantiated at three rungs -- double (53 mantissa bits), x87
// long double (64), and IEEE binary128 via libquadmath (113). Client code
// selects a rung through EvalParams::working_precision_bits; evaluators
// climb to the next rung when an error target is missed.

#include <cmath>
#include <complex>
#include <quadmath.h>

namespace psilab {

inline constexpr int kPrecisionRungs[] = {53, 64, 113};

template <class Real>
struct real_traits;

template <>
struct real_traits<double> {
  static constexpr int mantissa_bits = 53;
  static constexpr double eps = 2.220446049250313e-16;
};

template <>
struct real_traits<long double> {
  static constexpr int mantissa_bits = 64;
  static constexpr long double eps = 1.0842021724855044e-19L;
};

template <>
struct real_traits<__float128> {
  static constexpr int mantissa_bits = 113;
  // FLT128_EPSILON = 2^-112
  static constexpr __float128 eps = 1.925929944387235853055977942584927319e-34;
};

// Scalar transcendentals as a uniform overload set across the rungs.
namespace rm {

inline double exp_(double x) { return std::exp(x); }
inline long double exp_(long double x) { return std::exp(x); }
inline __float128 exp_(__float128 x) { return expq(x); }

inline double log_(double x) { return std::log(x); }
inline long double log_(long double x) { return std::log(x); }
inline __float128 log_(__float128 x) { return logq(x); }

inline double log1p_(double x) { return std::log1p(x); }
inline long double log1p_(long double x) { return std::log1p(x); }
inline __float128 log1p_(__float128 x) { return log1pq(x); }

inline double sin_(double x) { return std::sin(x); }
inline long double sin_(long double x) { return std::sin(x); }
inline __float128 sin_(__float128 x) { return sinq(x); }

inline double cos_(double x) { return std::cos(x); }
inline long double cos_(long double x) { return std::cos(x); }
inline __float128 cos_(__float128 x) { return cosq(x); }

inline double atan2_(double y, double x) { return std::atan2(y, x); }
inline long double atan2_(long double y, long double x) { return std::atan2(y, x); }
inline __float128 atan2_(__float128 y, __float128 x) { return atan2q(y, x); }

inline double sqrt_(double x) { return std::sqrt(x); }
inline long double sqrt_(long double x) { return std::sqrt(x); }
inline __float128 sqrt_(__float128 x) { return sqrtq(x); }

inline double hypot_(double x, double y) { return std::hypot(x, y); }
inline long double hypot_(long double x, long double y) { return std::hypot(x, y); }
inline __float128 hypot_(__float128 x, __float128 y) { return hypotq(x, y); }

inline double fabs_(double x) { return std::fabs(x); }
inline long double fabs_(long double x) { return std::fabs(x); }
inline __float128 fabs_(__float128 x) { return fabsq(x); }

inline double pow_(double x, double y) { return std::pow(x, y); }
inline long double pow_(long double x, long double y) { return std::pow(x, y); }
inline __float128 pow_(__float128 x, __float128 y) { return powq(x, y); }

}  // namespace rm

template <class Real>
inline Real pi_v_();
template <>
inline double pi_v_<double>() { return 3.141592653589793238462643383279502884; }
template <>
inline long double pi_v_<long double>() { return 3.141592653589793238462643383279502884L; }
template <>
inline __float128 pi_v_<__float128>() { return M_PIq; }

template <class Real>
using cplx = std::complex<Real>;

// std::complex<T> arithmetic (+,-,*,/) is defined generically by libstdc++
// for any value type, but the transcendental functions are not; these
// helpers supply them via the rm overload set so kernels stay rung-generic.

template <class Real>
Real cabs(const cplx<Real>& z) {
  return rm::hypot_(z.real(), z.imag());
}

template <class Real>
Real carg(const cplx<Real>& z) {
  return rm::atan2_(z.imag(), z.real());
}

template <class Real>
cplx<Real> cexp(const cplx<Real>& z) {
  Real e = rm::exp_(z.real());
  return {e * rm::cos_(z.imag()), e * rm::sin_(z.imag())};
}

template <class Real>
cplx<Real> clog(const cplx<Real>& z) {
  return {rm::log_(cabs(z)), carg(z)};
}

// sin(x+iy) = sin x cosh y + i cos x sinh y; callers keep |y| modest and
// switch to log-space asymptotics otherwise.
template <class Real>
cplx<Real> csin(const cplx<Real>& z) {
  Real ey = rm::exp_(z.imag()), eym = Real(1) / ey;
  Real ch = (ey + eym) / 2, sh = (ey - eym) / 2;
  return {rm::sin_(z.real()) * ch, rm::cos_(z.real()) * sh};
}

template <class Real>
cplx<Real> ccos(const cplx<Real>& z) {
  Real ey = rm::exp_(z.imag()), eym = Real(1) / ey;
  Real ch = (ey + eym) / 2, sh = (ey - eym) / 2;
  return {rm::cos_(z.real()) * ch, -rm::sin_(z.real()) * sh};
}

template <class Real>
cplx<Real> cpow(const cplx<Real>& b, const cplx<Real>& e) {
  return cexp<Real>(e * clog(b));
}

// p^w for real p > 0: the workhorse of every Dirichlet/Euler loop.
template <class Real>
cplx<Real> rpow(Real p, const cplx<Real>& w) {
  Real lp = rm::log_(p);
  Real e = rm::exp_(w.real() * lp);
  Real ph = w.imag() * lp;
  return {e * rm::cos_(ph), e * rm::sin_(ph)};
}

inline std::complex<double> to_cd(const cplx<double>& z) { return z; }
inline std::complex<double> to_cd(const cplx<long double>& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}
inline std::complex<double> to_cd(const cplx<__float128>& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

}  // namespace psilab
