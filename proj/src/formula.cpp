#include "psilab/formula.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "psilab/euler.hpp"

namespace psilab {

namespace {

double factorial_d(int m) {
  double f = 1;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

void check_k(int k) {
  if (k < 0 || k > 32)
    throw std::invalid_argument("k must lie in [0, 32], got " +
                                std::to_string(k));
}

// coefficient zeta(4) h_1(1) / ((k+1)! zeta(2)) = pi^2 h_1(1) / (15 (k+1)!)
FloatVal main_coefficient(int k, uint64_t P) {
  static std::mutex mu;
  static std::map<std::pair<int, uint64_t>, FloatVal> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({k, P});
  if (it != cache.end()) return it->second;

  EulerProductSpec spec;
  spec.n = 1;
  spec.prime_cutoff = P;
  const ApproxComplex h = h_n_eval(spec, {1.0, 0.0}, 64);
  const double pi = std::numbers::pi;
  const double c = pi * pi / 15.0 * h.value.real() / factorial_d(k + 1);
  const double rel = h.err / std::abs(h.value) + 4e-16;
  FloatVal out{c, std::fabs(c) * rel};
  cache.emplace(std::make_pair(k, P), out);
  return out;
}

}  // namespace

int default_n(double x_max) {
  if (!(x_max > 1)) return 2;
  const double raw = std::log(4.0 * std::log(x_max)) / (2.0 * std::log(2.0));
  return std::max(2, static_cast<int>(std::ceil(raw)) + 1);
}

FloatVal main_term(int k, double x, uint64_t prime_cutoff) {
  check_k(k);
  if (prime_cutoff < 1000)
    throw std::invalid_argument("main term needs a prime cutoff >= 10^3");
  const FloatVal c = main_coefficient(k, prime_cutoff);
  return {c.value * x, c.err * std::fabs(x) + 2e-16 * std::fabs(c.value * x)};
}

RieszSample residual(int k, double x, const ArithTable& table,
                     uint64_t prime_cutoff) {
  check_k(k);
  if (!(x >= 1)) throw std::domain_error("x must be >= 1");
  if (static_cast<uint64_t>(std::floor(x)) > table.limit) {
    std::ostringstream os;
    os << "x = " << x << " needs an arithmetic table up to "
       << static_cast<uint64_t>(std::floor(x)) << " (have " << table.limit
       << ")";
    throw resource_error(os.str());
  }

  RieszSample sample;
  sample.k = k;
  sample.x = x;
  if (x <= kExactRieszLimit) {
    sample.exact_path = true;
    sample.s_exact = riesz_mean(k, mpq_class(x), table);
    sample.s_value = sample.s_exact.get_d();
    sample.s_err = std::fabs(sample.s_value) * 2.3e-16;  // one rounding
  } else {
    const FloatVal sv = riesz_mean_float(k, x, table);
    sample.s_value = sv.value;
    sample.s_err = sv.err;
  }
  const FloatVal mt = main_term(k, x, prime_cutoff);
  sample.main = mt.value;
  sample.main_err = mt.err;
  sample.residual = sample.s_value - sample.main;
  sample.budget = sample.main_err + sample.s_err;
  return sample;
}

ZeroSumEngine::ZeroSumEngine(const ZeroTable& table, int k, int n,
                             uint64_t prime_cutoff, const EvalParams& eval,
                             double simplicity_threshold,
                             std::size_t coeff_limit)
    : table_(&table), k_(k), n_(n) {
  check_k(k);
  if (n < 2)
    throw std::domain_error(
        "zero sum needs n >= 2 so the residue point -1/2 lies in h_n's "
        "half-plane");
  if (!table.tabulated)
    throw std::invalid_argument("zero sum needs a tabulated zero table");

  EvalParams ep = eval;
  if (ep.working_precision_bits < 64) ep.working_precision_bits = 64;
  // zeta arguments here sit at Re s >= 1.5, where a shorter main sum still
  // carries a tiny certified remainder.
  ep.cutoff_multiplier = std::min(ep.cutoff_multiplier, 1.0);

  EulerProductSpec hspec;
  hspec.n = n;
  hspec.prime_cutoff = prime_cutoff;

  const double scale = std::ldexp(1.0, n);
  const std::size_t count = std::min(table.size(), coeff_limit);
  coeff_.resize(count);
  coeff_err_.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double g = table.gamma[i];
    const std::complex<double> s0{-0.5, g};  // rho - 1

    const ApproxComplex zp{table.zeta_prime[i], table.zeta_prime_err[i]};
    if (!(std::abs(zp.value) > simplicity_threshold)) {
      std::ostringstream os;
      os << "zero sum aborted: |zeta'(rho)| at gamma = " << g
         << " is at or below the simplicity threshold " << simplicity_threshold;
      throw eval_error(os.str());
    }

    // zeta(-1/2 + i g) through the reflection chi(s0) zeta(1 - s0).
    const ApproxComplex za = chi(s0, ep) * zeta(1.0 - s0, ep);
    const ApproxComplex zb = zeta(scale * (s0 + 1.0), ep);
    const ApproxComplex h = h_n_eval(hspec, s0, 64);

    std::complex<double> den{1.0, 0.0};
    for (int j = 0; j <= k_; ++j) den *= std::complex<double>(j - 0.5, g);
    const ApproxComplex den_ac{
        den, std::abs(den) * 4e-16 * static_cast<double>(k_ + 1)};

    const ApproxComplex c = za * zb * h / (zp * den_ac);
    coeff_[i] = c.value;
    coeff_err_[i] = c.err;
  }
}

FloatVal ZeroSumEngine::sum(double x, double T) const {
  if (!(x >= 1)) throw std::domain_error("x must be >= 1");
  if (T > table_->max_ordinate()) {
    std::ostringstream os;
    os << "T = " << T << " exceeds the zero-table coverage (largest ordinate "
       << table_->max_ordinate() << ")";
    throw resource_error(os.str());
  }
  if (table_->count_below(T) > coeff_.size())
    throw std::invalid_argument(
        "contour height needs more residue coefficients than were prepared");
  const long double lx = std::log(static_cast<long double>(x));
  double sum = 0, comp = 0, budget = 0;
  for (std::size_t i = 0; i < coeff_.size() && table_->gamma[i] <= T; ++i) {
    const long double phase = static_cast<long double>(table_->gamma[i]) * lx;
    const std::complex<double> rot(static_cast<double>(std::cos(phase)),
                                   static_cast<double>(std::sin(phase)));
    const double term = (coeff_[i] * rot).real();
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    budget += coeff_err_[i] +
              std::abs(coeff_[i]) *
                  (kOrdinateUncertainty * static_cast<double>(lx) + 4e-15);
  }
  return {sum, budget};
}

FloatVal zero_sum(const FormulaConfig& config, double x) {
  if (config.zeros == nullptr)
    throw std::invalid_argument("zero sum needs a zero table");
  const double T = midpoint_T(*config.zeros, config.zero_count);
  ZeroSumEngine engine(*config.zeros, config.k, config.n, config.prime_cutoff,
                       config.eval, config.simplicity_threshold,
                       config.zero_count);
  return engine.sum(x, T);
}

CompareReport compare(const FormulaConfig& config, const ArithTable& table) {
  if (config.zeros == nullptr)
    throw std::invalid_argument("compare needs a zero table");
  if (config.x_grid.empty())
    throw std::invalid_argument("compare needs a non-empty x grid");
  for (double x : config.x_grid)
    if (!(x >= 1)) throw std::domain_error("x must be >= 1");

  const ZeroTable& zt = *config.zeros;
  const double T = midpoint_T(zt, config.zero_count);
  const std::size_t doubled = config.zero_count * 2;
  const bool can_double = config.zero_count > 0 && doubled < zt.size();

  ZeroSumEngine engine(zt, config.k, config.n, config.prime_cutoff,
                       config.eval, config.simplicity_threshold,
                       can_double ? doubled : config.zero_count);

  CompareReport rep;
  rep.summary.grid_points = config.x_grid.size();
  rep.summary.T_used = T;
  rep.summary.zeros_used = zt.count_below(T);
  rep.summary.experimental_k = engine.experimental();

  double T2 = 0;
  if (can_double) {
    T2 = midpoint_T(zt, doubled);
    rep.summary.doubling_checked = true;
    rep.summary.T_doubled = T2;
    rep.summary.zeros_doubled = zt.count_below(T2);
  }

  std::size_t improved = 0, non_increasing = 0;
  double max_scaled = 0;
  int sign_changes = 0;
  double prev_sign = 0;
  for (double x : config.x_grid) {
    RieszSample s = residual(config.k, x, table, config.prime_cutoff);
    const FloatVal y = engine.sum(x, T);
    const double root = std::sqrt(x);
    s.zero_sum = y.value;
    s.zero_sum_err = y.err;
    s.scaled_zero_sum = y.value / root;
    s.discrepancy = s.residual - s.scaled_zero_sum;
    s.budget += y.err / root;

    if (std::fabs(s.discrepancy) < std::fabs(s.residual)) ++improved;
    max_scaled = std::max(max_scaled, std::fabs(s.discrepancy) * root);
    if (can_double) {
      const FloatVal y2 = engine.sum(x, T2);
      const double d2 = s.residual - y2.value / root;
      if (std::fabs(d2) <= std::fabs(s.discrepancy)) ++non_increasing;
    }
    const double sg = s.residual > 0 ? 1.0 : (s.residual < 0 ? -1.0 : 0.0);
    if (sg != 0 && prev_sign != 0 && sg != prev_sign) ++sign_changes;
    if (sg != 0) prev_sign = sg;

    rep.samples.push_back(std::move(s));
  }

  const double npts = static_cast<double>(config.x_grid.size());
  rep.summary.fraction_improved = static_cast<double>(improved) / npts;
  rep.summary.max_scaled_discrepancy = max_scaled;
  if (can_double)
    rep.summary.doubling_fraction = static_cast<double>(non_increasing) / npts;
  rep.summary.sign_changes = sign_changes;
  return rep;
}

ExponentFit exponent_fit(int k, const std::vector<double>& x_grid,
                         const ArithTable& table, uint64_t prime_cutoff) {
  check_k(k);
  if (x_grid.size() < 3)
    throw std::invalid_argument("exponent fit needs at least 3 grid points");
  const auto [lo, hi] = std::minmax_element(x_grid.begin(), x_grid.end());
  if (!(*hi >= 100.0 * *lo))
    throw std::invalid_argument(
        "exponent fit needs a grid spanning at least 2 decades");

  ExponentFit out;
  std::vector<double> xs, es;
  for (double x : x_grid) {
    const RieszSample s = residual(k, x, table, prime_cutoff);
    if (s.residual == 0) {
      ++out.excluded;
      continue;
    }
    xs.push_back(x);
    es.push_back(std::fabs(s.residual));
  }
  out.fit = fit_power_law(xs, es);
  return out;
}

}  // namespace psilab
