#include "psilab/zeta.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <type_traits>

#include "psilab/bernoulli.hpp"
#include "psilab/cgamma.hpp"
#include "psilab/real_ladder.hpp"

namespace psilab {

namespace {

template <class Real>
struct K {
  cplx<Real> value;
  Real err;
};

// A_j = B_{2j} / (2j)!, the Euler-Maclaurin correction coefficients.
template <class Real>
const std::array<Real, 31>& em_coeffs() {
  static const auto table = [] {
    std::array<Real, 31> a{};
    mpz_class fact = 1;
    for (int j = 1; j <= 30; ++j) {
      fact *= 2 * j - 1;
      fact *= 2 * j;
      a[static_cast<size_t>(j)] =
          real_from_mpq<Real>(bernoulli_exact(2 * j) / mpq_class(fact));
    }
    return a;
  }();
  return table;
}

int resolve_cutoff(const EvalParams& p, double abs_t) {
  int n = std::max(10, p.em_terms);
  n = std::max(n, static_cast<int>(std::ceil(p.cutoff_multiplier * abs_t)));
  // accuracy floor: cutoff >= |Im s| / 4
  n = std::max(n, static_cast<int>(std::ceil(abs_t / 4.0)) + 1);
  return n;
}

int resolve_q(const EvalParams& p) {
  if (p.bernoulli_order < 4 || p.bernoulli_order > 2 * (kMaxBernoulli / 2) ||
      p.bernoulli_order % 2 != 0)
    throw std::invalid_argument(
        "EvalParams.bernoulli_order must be even and in [4, 60]");
  return p.bernoulli_order / 2;
}

// Euler-Maclaurin zeta for Re s > -1/2:
//   zeta(s) = sum_{m<N} m^{-s} + N^{1-s}/(s-1) + N^{-s}/2
//           + sum_{j=1}^{q} A_j N^{-s-2j+1} (s)_{2j-1} + R_q,
// with two provable bounds on R_q (integral form via the periodized
// Bernoulli bound, and the first-omitted-term ratio form); the smaller is
// reported. Rounding enters through the phase t*log m, hence the
// |t|-weighted eps term.
template <class Real>
K<Real> zeta_em(const cplx<Real>& s, int N, int q) {
  const Real eps = real_traits<Real>::eps;
  const auto& A = em_coeffs<Real>();
  const Real sigma = s.real(), t = s.imag();
  const Real logN = rm::log_(Real(N));

  cplx<Real> sum{0, 0}, comp{0, 0};  // Kahan-compensated
  Real abs_sum = 1;
  sum = cplx<Real>(1, 0);  // m = 1
  for (int m = 2; m < N; ++m) {
    Real lm = rm::log_(Real(m));
    Real mag = rm::exp_(-sigma * lm);
    Real ph = t * lm;
    cplx<Real> term{mag * rm::cos_(ph), -mag * rm::sin_(ph)};
    cplx<Real> y = term - comp;
    cplx<Real> snew = sum + y;
    comp = (snew - sum) - y;
    sum = snew;
    abs_sum += mag;
  }

  cplx<Real> Npow = rpow(Real(N), -s);  // N^{-s}
  cplx<Real> tail1 = Real(N) * Npow / (s - cplx<Real>(1, 0));
  cplx<Real> half = Real(0.5) * Npow;
  sum += tail1 + half;
  abs_sum += cabs(tail1) + cabs(half);

  cplx<Real> Ns = Npow / Real(N);  // N^{-s-2j+1}, starting at j=1
  const Real invN2 = Real(1) / (Real(N) * Real(N));
  cplx<Real> poch{1, 0};
  int fac = 0;  // factors (s+0)...(s+fac-1) multiplied so far
  for (int j = 1; j <= q; ++j) {
    while (fac < 2 * j - 1) {
      poch *= s + cplx<Real>(Real(fac), 0);
      ++fac;
    }
    cplx<Real> term = A[static_cast<size_t>(j)] * (Ns * poch);
    sum += term;
    abs_sum += cabs(term);
    Ns *= invN2;
  }
  while (fac < 2 * q + 1) {
    poch *= s + cplx<Real>(Real(fac), 0);
    ++fac;
  }

  const Real sig2q = sigma + Real(2 * q);  // > 0 here (sigma >= -1/2, q >= 2)
  const Real twopi = 2 * pi_v_<Real>();
  // |~B_{2q+1}(x)| <= (2q+1)! * 2 zeta(2q+1) / (2pi)^{2q+1}, zeta(2q+1) < 1.2021
  const Real Kc = Real(2) * Real(1.2021) / rm::pow_(twopi, Real(2 * q + 1));
  const Real Nm = rm::pow_(Real(N), -sig2q);
  const Real pabs = cabs(poch);
  Real r_int = pabs * Kc * Nm / sig2q;
  Real r_trunc = r_int;
  if (q + 1 <= 30) {
    Real first_omit =
        rm::fabs_(A[static_cast<size_t>(q + 1)]) * pabs * Nm / Real(N);
    Real r_ratio = cabs(s + cplx<Real>(Real(2 * q + 1), 0)) /
                   (sigma + Real(2 * q + 1)) * first_omit;
    r_trunc = r_int < r_ratio ? r_int : r_ratio;
  }

  Real round_err =
      eps * abs_sum * (Real(0.5) * rm::fabs_(t) * logN + Real(6));
  return {sum, r_trunc + round_err};
}

// Term-wise derivative of the same expansion; the remainder bound is the
// differentiated integral form:
//   |R'| <= Kc N^{-sigma-2q} [ |P'| / (sigma+2q)
//                              + |P| (log N (sigma+2q) + 1)/(sigma+2q)^2 ],
// P = (s)_{2q+1}, P' its derivative (built by the product rule, no division).
template <class Real>
K<Real> zeta_em_prime(const cplx<Real>& s, int N, int q) {
  const Real eps = real_traits<Real>::eps;
  const auto& A = em_coeffs<Real>();
  const Real sigma = s.real(), t = s.imag();
  const Real logN = rm::log_(Real(N));

  cplx<Real> sum{0, 0}, comp{0, 0};
  Real abs_sum = 0;
  for (int m = 2; m < N; ++m) {
    Real lm = rm::log_(Real(m));
    Real mag = rm::exp_(-sigma * lm);
    Real ph = t * lm;
    cplx<Real> term{-lm * mag * rm::cos_(ph), lm * mag * rm::sin_(ph)};
    cplx<Real> y = term - comp;
    cplx<Real> snew = sum + y;
    comp = (snew - sum) - y;
    sum = snew;
    abs_sum += lm * mag;
  }

  cplx<Real> Npow = rpow(Real(N), -s);
  cplx<Real> sm1 = s - cplx<Real>(1, 0);
  cplx<Real> tail1 = -Real(N) * Npow *
                     (cplx<Real>(logN, 0) / sm1 + cplx<Real>(1, 0) / (sm1 * sm1));
  cplx<Real> half = -Real(0.5) * logN * Npow;
  sum += tail1 + half;
  abs_sum += cabs(tail1) + cabs(half);

  cplx<Real> Ns = Npow / Real(N);
  const Real invN2 = Real(1) / (Real(N) * Real(N));
  cplx<Real> poch{1, 0}, dpoch{0, 0};
  int fac = 0;
  for (int j = 1; j <= q; ++j) {
    while (fac < 2 * j - 1) {
      cplx<Real> f = s + cplx<Real>(Real(fac), 0);
      dpoch = dpoch * f + poch;
      poch *= f;
      ++fac;
    }
    cplx<Real> term =
        A[static_cast<size_t>(j)] * (Ns * (dpoch - cplx<Real>(logN, 0) * poch));
    sum += term;
    abs_sum += cabs(term);
    Ns *= invN2;
  }
  while (fac < 2 * q + 1) {
    cplx<Real> f = s + cplx<Real>(Real(fac), 0);
    dpoch = dpoch * f + poch;
    poch *= f;
    ++fac;
  }

  const Real sig2q = sigma + Real(2 * q);
  const Real twopi = 2 * pi_v_<Real>();
  const Real Kc = Real(2) * Real(1.2021) / rm::pow_(twopi, Real(2 * q + 1));
  const Real Nm = rm::pow_(Real(N), -sig2q);
  Real r_trunc = Kc * Nm *
                 (cabs(dpoch) / sig2q +
                  cabs(poch) * (logN * sig2q + 1) / (sig2q * sig2q));

  Real round_err =
      eps * abs_sum * (Real(0.5) * rm::fabs_(t) * logN + Real(6));
  return {sum, r_trunc + round_err};
}

// log sin(w), stable for any |Im w| (asymptotic forms avoid cosh overflow);
// the branch is irrelevant to callers, who exponentiate.
template <class Real>
cplx<Real> log_sin(const cplx<Real>& w) {
  const Real pi = pi_v_<Real>();
  const cplx<Real> i{0, 1};
  Real y = w.imag();
  if (rm::fabs_(y) <= Real(20)) return clog(csin(w));
  const cplx<Real> log2i{rm::log_(Real(2)), pi / 2};
  if (y > 0) {
    // sin w = (i/2) e^{-iw} (1 - e^{2iw});  log(i/2) = -log 2 + i pi/2
    cplx<Real> u = -cexp(Real(2) * (i * w));
    return -(i * w) + cplx<Real>(-log2i.real(), log2i.imag()) +
           clog(cplx<Real>(1, 0) + u);
  }
  cplx<Real> u = -cexp(Real(-2) * (i * w));
  return (i * w) - log2i + clog(cplx<Real>(1, 0) + u);
}

// log chi(s) = s log 2 + (s-1) log pi + log sin(pi s / 2) + log Gamma(1-s)
template <class Real>
K<Real> log_chi(const cplx<Real>& s) {
  const Real eps = real_traits<Real>::eps;
  const Real pi = pi_v_<Real>();
  const Real l2 = rm::log_(Real(2)), lpi = rm::log_(pi);
  cplx<Real> w = (pi / 2) * s;
  cplx<Real> ls = log_sin(w);
  auto lg = clgamma<Real>(cplx<Real>(1, 0) - s);
  cplx<Real> value =
      s * l2 + (s - cplx<Real>(1, 0)) * lpi + ls + lg.value;
  Real round = eps * (cabs(s) * (l2 + lpi) + cabs(ls) + cabs(lg.value) +
                      rm::fabs_(w.imag()) + Real(8));
  return {value, lg.err + round};
}

template <class Real>
K<Real> chi_kernel(const cplx<Real>& s) {
  K<Real> lc = log_chi(s);
  if (!(lc.err < Real(0.5)))
    throw eval_error("chi: log-space error bound too large");
  cplx<Real> e = cexp(lc.value);
  // |e^{L+d} - e^L| <= |e^L| (e^{|d|} - 1) <= |e^L| |d| * 1.3 for |d| < 0.5
  return {e, cabs(e) * lc.err * Real(1.3)};
}

// zeta by Euler-Maclaurin directly for Re s >= -1/2, by reflection
// zeta(s) = chi(s) zeta(1-s) further left (where 1-s has Re >= 3/2).
template <class Real>
K<Real> zeta_kernel(const cplx<Real>& s, int N, int q) {
  if (s.real() >= Real(-0.5)) return zeta_em(s, N, q);
  K<Real> c = chi_kernel(s);
  K<Real> z = zeta_em(cplx<Real>(1, 0) - s, N, q);
  Real ca = cabs(c.value), za = cabs(z.value);
  return {c.value * z.value, ca * z.err + za * c.err + c.err * z.err};
}

// cot(w) with the same large-|Im| stabilization as log_sin.
template <class Real>
cplx<Real> ccot(const cplx<Real>& w) {
  const cplx<Real> i{0, 1};
  Real y = w.imag();
  if (rm::fabs_(y) <= Real(20)) return ccos(w) / csin(w);
  if (y > 0) {
    cplx<Real> e2 = cexp(Real(2) * (i * w));
    return -i * (cplx<Real>(1, 0) + e2) / (cplx<Real>(1, 0) - e2);
  }
  cplx<Real> e2 = cexp(Real(-2) * (i * w));
  return i * (cplx<Real>(1, 0) + e2) / (cplx<Real>(1, 0) - e2);
}

template <class Real>
K<Real> zeta_prime_kernel(const cplx<Real>& s, int N, int q) {
  if (s.real() >= Real(-0.5)) return zeta_em_prime(s, N, q);
  // zeta'(s) = chi(s) [ (log chi)'(s) zeta(1-s) - zeta'(1-s) ],
  // (log chi)'(s) = log 2 + log pi + (pi/2) cot(pi s/2) + digamma(1-s)
  // (the minus from d/ds of Gamma(1-s) is folded into +digamma here:
  //  d/ds log Gamma(1-s) = -digamma(1-s)).
  const Real eps = real_traits<Real>::eps;
  const Real pi = pi_v_<Real>();
  K<Real> c = chi_kernel(s);
  cplx<Real> one{1, 0};
  K<Real> z1 = zeta_em(one - s, N, q);
  K<Real> zp1 = zeta_em_prime(one - s, N, q);
  auto dg = cdigamma<Real>(one - s);
  cplx<Real> cot = ccot((pi / 2) * s);
  cplx<Real> Lp = cplx<Real>(rm::log_(Real(2)) + rm::log_(pi), 0) +
                  (pi / 2) * cot - dg.value;
  Real eLp = dg.err + eps * (cabs(cot) * pi + Real(8));
  cplx<Real> inner = Lp * z1.value - zp1.value;
  cplx<Real> value = c.value * inner;
  Real err = cabs(c.value) *
                 (cabs(Lp) * z1.err + cabs(z1.value) * eLp + zp1.err) +
             c.err * cabs(inner);
  return {value, err * Real(1.05)};
}

void check_common(std::complex<double> s) {
  if (std::abs(s.imag()) > kImagCeiling) {
    std::ostringstream os;
    os << "evaluation at |Im s| = " << std::abs(s.imag())
       << " above the documented ceiling " << kImagCeiling;
    throw resource_error(os.str());
  }
}

void validate_bits(const EvalParams& p) {
  if (p.working_precision_bits != 53 && p.working_precision_bits != 64 &&
      p.working_precision_bits != 113)
    throw std::invalid_argument(
        "EvalParams.working_precision_bits must be 53, 64 or 113");
}

// Run the evaluation at the requested rung; climb while a target error is
// set and unmet. Explicit failure when even the top rung misses it.
template <class F>
ApproxComplex climb(const EvalParams& p, F&& f) {
  validate_bits(p);
  ApproxComplex best;
  double best_err = std::numeric_limits<double>::infinity();
  for (int bits : kPrecisionRungs) {
    if (bits < p.working_precision_bits) continue;
    ApproxComplex a;
    if (bits == 53)
      a = f(std::type_identity<double>{});
    else if (bits == 64)
      a = f(std::type_identity<long double>{});
    else
      a = f(std::type_identity<__float128>{});
    if (a.err < best_err) {
      best = a;
      best_err = a.err;
    }
    if (p.target_abs_err <= 0 || a.err <= p.target_abs_err) return a;
  }
  std::ostringstream os;
  os << "requested error bound " << p.target_abs_err
     << " not reachable; best achieved " << best_err
     << " at the top precision rung";
  throw eval_error(os.str());
}

template <class Real>
cplx<Real> widen(std::complex<double> s) {
  return {Real(s.real()), Real(s.imag())};
}

}  // namespace

ApproxComplex zeta(std::complex<double> s, const EvalParams& params) {
  if (s == std::complex<double>(1.0, 0.0))
    throw std::domain_error("zeta: pole at s = 1");
  check_common(s);
  if (s.imag() < 0) {  // conjugation symmetry by construction
    ApproxComplex r = zeta(std::conj(s), params);
    r.value = std::conj(r.value);
    return r;
  }
  int q = resolve_q(params);
  int N = resolve_cutoff(params, std::abs(s.imag()));
  ApproxComplex r = climb(params, [&](auto tag) {
    using R = typename decltype(tag)::type;
    K<R> k = zeta_kernel<R>(widen<R>(s), N, q);
    return ApproxComplex{to_cd(k.value), static_cast<double>(k.err),
                         s.real() > 1.0};
  });
  return r;
}

ApproxComplex chi(std::complex<double> s, const EvalParams& params) {
  if (s.imag() == 0.0 && s.real() == std::round(s.real())) {
    long long n = static_cast<long long>(std::llround(s.real()));
    bool gamma_pole = n >= 1;                 // Gamma(1-s) pole
    bool sin_zero = (n % 2) == 0;             // sin(pi s / 2) zero
    if (gamma_pole || sin_zero)
      throw std::domain_error(
          "chi: degenerate at integer s = " + std::to_string(n) +
          " (0*inf or exact zero); evaluate the limit via the reflection "
          "identity instead");
  }
  check_common(s);
  if (s.imag() < 0) {
    ApproxComplex r = chi(std::conj(s), params);
    r.value = std::conj(r.value);
    return r;
  }
  return climb(params, [&](auto tag) {
    using R = typename decltype(tag)::type;
    K<R> k = chi_kernel<R>(widen<R>(s));
    return ApproxComplex{to_cd(k.value), static_cast<double>(k.err), false};
  });
}

ApproxComplex zeta_prime(std::complex<double> s, const EvalParams& params) {
  if (s == std::complex<double>(1.0, 0.0))
    throw std::domain_error("zeta_prime: pole at s = 1");
  check_common(s);
  if (s.imag() < 0) {
    ApproxComplex r = zeta_prime(std::conj(s), params);
    r.value = std::conj(r.value);
    return r;
  }
  int q = resolve_q(params);
  int N = resolve_cutoff(params, std::abs(s.imag()));
  ApproxComplex base = climb(params, [&](auto tag) {
    using R = typename decltype(tag)::type;
    K<R> k = zeta_prime_kernel<R>(widen<R>(s), N, q);
    return ApproxComplex{to_cd(k.value), static_cast<double>(k.err),
                         s.real() > 1.0};
  });

  // Internal cross-check by central difference with a step refinement;
  // the returned bound covers both methods.
  EvalParams pz = params;
  pz.target_abs_err = 0;
  double h = std::max(1e-7, 1e-6 * (1.0 + std::abs(s)));
  auto central = [&](double step) {
    ApproxComplex zp = zeta(s + std::complex<double>(step, 0), pz);
    ApproxComplex zm = zeta(s - std::complex<double>(step, 0), pz);
    std::complex<double> d = (zp.value - zm.value) / (2 * step);
    double e = (zp.err + zm.err) / (2 * step);
    return std::pair<std::complex<double>, double>(d, e);
  };
  auto [d1, e1] = central(h);
  auto [d2, e2] = central(h / 4);
  double step_consistency = std::abs(d1 - d2);
  double disagreement = std::abs(base.value - d2);
  double allowance = base.err + e2 + step_consistency +
                     1e-9 * (1.0 + std::abs(base.value));
  if (disagreement > 10 * allowance) {
    std::ostringstream os;
    os << "zeta_prime: analytic and finite-difference evaluations disagree "
          "by "
       << disagreement << " (allowance " << allowance << ") at s = ("
       << s.real() << ", " << s.imag() << ")";
    throw eval_error(os.str());
  }
  base.err = std::max(base.err, disagreement);
  return base;
}

double hardy_theta(double t, const EvalParams& params) {
  if (std::abs(t) > kImagCeiling)
    throw resource_error("hardy_theta: |t| above the documented ceiling");
  if (params.working_precision_bits > 64) {
    auto lg = clgamma<__float128>({__float128(0.25), __float128(t) / 2});
    __float128 th =
        lg.value.imag() - (__float128(t) / 2) * rm::log_(pi_v_<__float128>());
    return static_cast<double>(th);
  }
  // one rung above double by default: theta enters phases directly
  auto lg = clgamma<long double>({0.25L, static_cast<long double>(t) / 2});
  long double th = lg.value.imag() -
                   (static_cast<long double>(t) / 2) * rm::log_(pi_v_<long double>());
  return static_cast<double>(th);
}

FloatVal hardy_z(double t, const EvalParams& params) {
  double th = hardy_theta(t, params);
  ApproxComplex z = zeta({0.5, t}, params);
  std::complex<double> rot{std::cos(th), std::sin(th)};
  std::complex<double> w = rot * z.value;
  double theta_err = 1.1e-16 * std::abs(th) + 1e-18;
  double err = z.err + std::abs(z.value) * theta_err + std::abs(w.imag());
  return {w.real(), err};
}

RefineResult refine_zero(double gamma_guess, const EvalParams& params,
                         double tolerance, double derivative_floor) {
  if (!(gamma_guess > 0) || gamma_guess > kImagCeiling)
    throw std::invalid_argument("refine_zero: guess out of range");

  auto zval = [&](double t) { return hardy_z(t, params).value; };

  // A seed already meeting the residual contract is left untouched: Newton
  // from a bracket midpoint could only move it away from the zero.
  const FloatVal z_seed = hardy_z(gamma_guess, params);
  if (std::abs(z_seed.value) <= tolerance)
    return {gamma_guess, std::abs(z_seed.value), z_seed.err, 0};

  // Expanding scan for a sign-change bracket within +-0.5 of the guess.
  double z0 = z_seed.value;
  double a = gamma_guess, b = gamma_guess, fa = z0;
  bool found = false;
  double best_t = gamma_guess, best_az = std::abs(z0);
  double lo_t = gamma_guess, lo_f = z0, hi_t = gamma_guess, hi_f = z0;
  for (int k = 1; k <= 10 && !found; ++k) {
    double tr = gamma_guess + 0.05 * k;
    double fr = zval(tr);
    if (std::abs(fr) < best_az) { best_az = std::abs(fr); best_t = tr; }
    if (fr == 0.0 || (hi_f < 0) != (fr < 0)) {
      a = hi_t; fa = hi_f; b = tr; found = true; break;
    }
    hi_t = tr; hi_f = fr;
    double tl = gamma_guess - 0.05 * k;
    if (tl > 0) {
      double fl = zval(tl);
      if (std::abs(fl) < best_az) { best_az = std::abs(fl); best_t = tl; }
      if (fl == 0.0 || (lo_f < 0) != (fl < 0)) {
        a = tl; fa = fl; b = lo_t; found = true; break;
      }
      lo_t = tl; lo_f = fl;
    }
  }
  if (!found) {
    std::ostringstream os;
    os << "refine_zero: no sign change of Z within 0.5 of " << gamma_guess
       << "; best |Z| = " << best_az << " at t = " << best_t;
    throw eval_error(os.str());
  }

  auto theta_prime = [&](double t) {
    auto dg = cdigamma<long double>({0.25L, static_cast<long double>(t) / 2});
    return 0.5 * static_cast<double>(dg.value.real()) -
           0.5 * std::log(3.141592653589793238462643383279502884);
  };

  double t = (a + b) / 2;
  ApproxComplex zt = zeta({0.5, t}, params);
  double th = hardy_theta(t, params);
  std::complex<double> rot{std::cos(th), std::sin(th)};
  double Z = (rot * zt.value).real();
  if ((fa < 0) != (Z < 0)) b = t; else { a = t; fa = Z; }

  for (int iter = 1; iter <= 80; ++iter) {
    double az = std::abs(zt.value);
    if (az <= tolerance)
      return {t, az, zt.err, iter};
    ApproxComplex zp = zeta_prime({0.5, t}, params);
    double tp = theta_prime(t);
    // Z'(t) = -Im( e^{i theta} (theta' zeta + zeta') )
    double Zp = -((rot) * (tp * zt.value + zp.value)).imag();
    if (std::abs(Zp) < derivative_floor) {
      std::ostringstream os;
      os << "refine_zero: |Z'| = " << std::abs(Zp) << " below floor "
         << derivative_floor << " near t = " << t
         << "; zero may not be simple";
      throw eval_error(os.str());
    }
    double tn = t - Z / Zp;
    if (!(tn > a && tn < b)) tn = (a + b) / 2;  // bisection guard
    t = tn;
    zt = zeta({0.5, t}, params);
    th = hardy_theta(t, params);
    rot = {std::cos(th), std::sin(th)};
    Z = (rot * zt.value).real();
    if ((fa < 0) != (Z < 0)) b = t; else { a = t; fa = Z; }
    if (b - a < 1e-14 && std::abs(zt.value) > tolerance) break;
  }
  double az = std::abs(zt.value);
  if (az <= tolerance) return {t, az, zt.err, 80};
  std::ostringstream os;
  os << "refine_zero: not converged; best iterate gamma = " << t
     << " with |zeta| = " << az;
  throw eval_error(os.str());
}

}  // namespace psilab
