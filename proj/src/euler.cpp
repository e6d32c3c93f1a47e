#include "psilab/euler.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "psilab/primes.hpp"
#include "psilab/real_ladder.hpp"
#include "psilab/zeta.hpp"

namespace psilab {

namespace {

constexpr int kMaxIndex = 30;           // M = 2^n stays well inside double range
constexpr std::size_t kBlock = 8192;    // primes per partial product

std::shared_ptr<const std::vector<uint32_t>> primes_cached(uint64_t cutoff) {
  static std::mutex mu;
  static std::map<uint64_t, std::shared_ptr<const std::vector<uint32_t>>> pool;
  std::lock_guard<std::mutex> lock(mu);
  auto it = pool.find(cutoff);
  if (it != pool.end()) return it->second;
  auto ptr = std::make_shared<const std::vector<uint32_t>>(primes_up_to(cutoff));
  pool.emplace(cutoff, ptr);
  return ptr;
}

void validate_spec(const EulerProductSpec& spec) {
  if (spec.n < 1 || spec.n > kMaxIndex)
    throw std::invalid_argument("h_n index n must lie in [1, 30], got " +
                                std::to_string(spec.n));
  if (spec.prime_cutoff < 100)
    throw std::invalid_argument("prime cutoff must be at least 100, got " +
                                std::to_string(spec.prime_cutoff));
}

// sum_{p > P} p^{-a} <= 1.26 a / ((a-1) log P) * P^{1-a} for a > 1, obtained
// by partial summation against pi(u) <= 1.26 u / log u (valid for u >= 17;
// the cutoff floor of 100 keeps us inside that range).
double prime_tail_bound(double a, double P) {
  return 1.26 * a / ((a - 1.0) * std::log(P)) * std::pow(P, 1.0 - a);
}

struct TailInfo {
  double rel = 0;   // |h_true / h_P - 1| bound
  double single_factor_cap = 0;
};

TailInfo tail_bound(int n, double sigma, double P) {
  const double M = std::ldexp(1.0, n);
  const double a1 = 2.0 + sigma;
  const double a2 = M * (1.0 + sigma);
  const double g = 1.0 / (1.0 - std::pow(2.0, -(1.0 + sigma)));
  TailInfo info;
  info.single_factor_cap = g * std::pow(P, -a1) + std::pow(P, -a2);
  if (info.single_factor_cap > 0.5) {
    std::ostringstream os;
    os << "h_" << n << " tail control fails at prime cutoff " << P
       << " (per-factor deviation bound " << info.single_factor_cap
       << "); increase the prime cutoff";
    throw eval_error(os.str());
  }
  // |local - 1| <= c(p) := g p^{-a1} + p^{-a2}, so |log local| <=
  // c(p)/(1 - c(P)) for p > P and the omitted factors multiply to
  // exp(L/(1 - c(P))) at most.
  const double L = g * prime_tail_bound(a1, P) + prime_tail_bound(a2, P);
  info.rel = std::expm1(L / (1.0 - info.single_factor_cap));
  return info;
}

template <typename Real>
cplx<Real> local_factor(uint32_t p, const cplx<Real>& s1, double M) {
  const Real lp = rm::log_(static_cast<Real>(p));
  const cplx<Real> w = cexp<Real>(-s1 * lp);
  const cplx<Real> wM1 = cexp<Real>(-s1 * (lp * static_cast<Real>(M - 1.0)));
  const cplx<Real> geo = w * (Real(1) - wM1) / (Real(1) - w);
  const Real ratio = static_cast<Real>(p) / static_cast<Real>(p + 1.0);
  return Real(1) + ratio * (geo / static_cast<Real>(p) - wM1 * w);
}

template <typename Real>
std::complex<double> product_kernel(const std::vector<uint32_t>& primes,
                                    std::complex<double> s, double M) {
  const cplx<Real> s1(static_cast<Real>(s.real()) + Real(1),
                      static_cast<Real>(s.imag()));
  // Fixed-size blocks folded in ascending order keep the reduction
  // deterministic independent of how the blocks are evaluated.
  const std::size_t nblocks = (primes.size() + kBlock - 1) / kBlock;
  std::vector<cplx<Real>> partial(nblocks, cplx<Real>(Real(1), Real(0)));
  for (std::size_t b = 0; b < nblocks; ++b) {
    const std::size_t lo = b * kBlock;
    const std::size_t hi = std::min(primes.size(), lo + kBlock);
    cplx<Real> acc(Real(1), Real(0));
    for (std::size_t i = lo; i < hi; ++i)
      acc *= local_factor<Real>(primes[i], s1, M);
    partial[b] = acc;
  }
  cplx<Real> prod(Real(1), Real(0));
  for (const auto& block : partial) prod *= block;
  return to_cd(prod);
}

template <typename Real>
double kernel_round_rel(std::size_t nprimes) {
  // ~15 ulps of relative drift per local factor (exp, divisions, multiply).
  return 15.0 * static_cast<double>(real_traits<Real>::eps) *
         static_cast<double>(nprimes);
}

}  // namespace

ApproxComplex h_n_eval(const EulerProductSpec& spec, std::complex<double> s,
                       int precision_bits) {
  validate_spec(spec);
  const double sigma = s.real();
  const double edge = -1.0 + std::ldexp(1.0, -spec.n);
  if (!(sigma > edge + kEulerHalfPlaneMargin)) {
    std::ostringstream os;
    os << "h_" << spec.n << " requires Re s > " << edge << " + "
       << kEulerHalfPlaneMargin << ", got Re s = " << sigma;
    throw std::domain_error(os.str());
  }
  if (s.imag() < 0) {
    ApproxComplex conj = h_n_eval(spec, std::conj(s), precision_bits);
    conj.value = std::conj(conj.value);
    return conj;
  }

  const auto primes = primes_cached(spec.prime_cutoff);
  const double M = std::ldexp(1.0, spec.n);

  std::complex<double> value;
  double round_rel = 0;
  switch (precision_bits) {
    case 53:
      value = product_kernel<double>(*primes, s, M);
      round_rel = kernel_round_rel<double>(primes->size());
      break;
    case 64:
      value = product_kernel<long double>(*primes, s, M);
      round_rel = kernel_round_rel<long double>(primes->size());
      break;
    case 113:
      value = product_kernel<__float128>(*primes, s, M);
      round_rel = kernel_round_rel<__float128>(primes->size());
      break;
    default:
      throw std::invalid_argument(
          "precision_bits must be 53, 64, or 113, got " +
          std::to_string(precision_bits));
  }

  const TailInfo tail =
      tail_bound(spec.n, sigma, static_cast<double>(spec.prime_cutoff));
  ApproxComplex out;
  out.value = value;
  out.err = std::abs(value) * (tail.rel + round_rel);
  out.rigorous = true;
  if (spec.target_tolerance > 0 && out.err > spec.target_tolerance) {
    std::ostringstream os;
    os << "h_" << spec.n << "(" << s.real() << (s.imag() < 0 ? "-" : "+")
       << std::abs(s.imag()) << "i) error bound " << out.err
       << " exceeds the requested tolerance " << spec.target_tolerance
       << "; increase the prime cutoff (currently " << spec.prime_cutoff
       << ")";
    throw eval_error(os.str());
  }
  return out;
}

FactorizationReport verify_factorization(int n, std::complex<double> s,
                                         uint64_t series_limit,
                                         const EulerProductSpec& spec,
                                         const ArithTable& table,
                                         double slack) {
  if (!(s.real() > 1.0))
    throw std::domain_error(
        "factorization check requires Re s > 1 for the Dirichlet side");
  if (spec.n != n)
    throw std::invalid_argument("factor index mismatch between n and spec.n");

  FactorizationReport rep;
  rep.n = n;
  rep.s = s;
  rep.series_limit = series_limit;
  rep.slack = slack;

  EvalParams ep;
  ep.working_precision_bits = 64;
  const double scale = std::ldexp(1.0, n);
  const std::complex<double> shifted = scale * (s + 1.0);
  const ApproxComplex za = zeta(s, ep);
  const ApproxComplex zb = zeta(shifted, ep);
  const ApproxComplex zc = zeta(s + 1.0, ep);
  const ApproxComplex h = h_n_eval(spec, s, 64);
  rep.lhs = za * zb * h / zc;

  const DirichletPartial partial = dirichlet_partial(s, series_limit, table);
  rep.rhs = partial.sum;
  rep.dirichlet_tail = partial.tail_bound;
  rep.tolerance = slack + rep.dirichlet_tail + rep.lhs.err + rep.rhs.err;
  rep.abs_diff = std::abs(rep.lhs.value - rep.rhs.value);
  rep.pass = rep.abs_diff <= rep.tolerance;
  return rep;
}

BoundaryScanReport boundary_growth_scan(double delta,
                                        const std::vector<double>& t_samples,
                                        int n, uint64_t prime_cutoff) {
  if (!(delta > 0.0) || delta > 1.0 / 3.0 + 1e-12)
    throw std::invalid_argument("delta must lie in (0, 1/3]");
  if (t_samples.empty())
    throw std::invalid_argument("boundary scan needs at least one t sample");
  int n_min = static_cast<int>(std::floor(std::log2(2.0 / delta))) + 1;
  while (!(delta * std::ldexp(1.0, n_min - 1) > 1.0)) ++n_min;
  if (n < n_min) {
    std::ostringstream os;
    os << "n = " << n << " is below the admissible range for delta = " << delta
       << "; the minimal admissible n is " << n_min;
    throw std::domain_error(os.str());
  }

  EulerProductSpec spec;
  spec.n = n;
  spec.prime_cutoff = prime_cutoff;

  BoundaryScanReport rep;
  rep.delta = delta;
  rep.n = n;
  rep.rows.reserve(t_samples.size());
  double max_log = -std::numeric_limits<double>::infinity();
  for (double t : t_samples) {
    const ApproxComplex h = h_n_eval(spec, {-1.0 + delta, t}, 64);
    const double a = std::abs(h.value);
    rep.rows.push_back({t, a, h.err});
    max_log = std::max(max_log, std::log(a));
  }
  rep.c_hat = delta * max_log;
  return rep;
}

}  // namespace psilab
