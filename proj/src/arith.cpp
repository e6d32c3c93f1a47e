#include "psilab/arith.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace psilab {

ArithTable build_arith_table(uint64_t N) {
  if (N == 0) throw std::invalid_argument("build_arith_table: N must be >= 1");
  if (N > kArithTableMax) {
    std::ostringstream os;
    os << "build_arith_table: N = " << N << " above the memory cap "
       << kArithTableMax;
    throw resource_error(os.str());
  }
  ArithTable t;
  t.limit = N;
  t.spf.assign(N + 1, 0);
  t.mu.assign(N + 1, 0);
  t.psi.assign(N + 1, 0);
  t.spf[1] = 1;
  t.mu[1] = 1;
  t.psi[1] = 1;

  std::vector<uint32_t> primes;
  for (uint64_t i = 2; i <= N; ++i) {
    if (t.spf[i] == 0) {
      t.spf[i] = static_cast<uint32_t>(i);
      t.mu[i] = -1;
      t.psi[i] = i + 1;
      primes.push_back(static_cast<uint32_t>(i));
    }
    for (uint32_t p : primes) {
      if (p > t.spf[i] || p * i > N) break;
      uint64_t m = p * i;
      t.spf[m] = p;
      if (p == t.spf[i]) {
        // p | i: psi(p^{a+1}) = p psi(p^a), mu has a square factor
        t.mu[m] = 0;
        t.psi[m] = t.psi[i] * p;
      } else {
        t.mu[m] = static_cast<int8_t>(-t.mu[i]);
        t.psi[m] = t.psi[i] * (p + 1);
      }
    }
  }
  return t;
}

mpq_class riesz_mean(int k, const mpq_class& x, const ArithTable& table) {
  if (k < 0 || k > 32)
    throw std::invalid_argument(
        "riesz_mean: k must lie in [0, 32] (factorial growth cap)");
  if (x <= 0) throw std::invalid_argument("riesz_mean: x must be positive");
  mpz_class fl = x.get_num() / x.get_den();  // floor for positive x
  if (fl > static_cast<unsigned long>(table.limit)) {
    std::ostringstream os;
    os << "riesz_mean: x = " << fl.get_str()
       << " beyond table limit " << table.limit
       << "; rebuild the table with N >= " << fl.get_str();
    throw resource_error(os.str());
  }
  uint64_t top = fl.get_ui();

  // (1 - l/x)^k = ((num - l den) / num)^k with x = num/den
  const mpz_class& num = x.get_num();
  const mpz_class& den = x.get_den();
  mpq_class acc = 0;
  mpz_class diff, dpow, npow;
  for (uint64_t l = 1; l <= top; ++l) {
    mpq_class term(static_cast<unsigned long>(l), table.psi[l]);
    if (k > 0) {
      diff = num - mpz_class(static_cast<unsigned long>(l)) * den;
      if (diff == 0) continue;  // l = x annihilates the term
      mpz_pow_ui(dpow.get_mpz_t(), diff.get_mpz_t(), static_cast<unsigned>(k));
      mpz_pow_ui(npow.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned>(k));
      term *= mpq_class(dpow) / mpq_class(npow);
    }
    acc += term;
  }
  mpz_class kfact;
  mpz_fac_ui(kfact.get_mpz_t(), static_cast<unsigned>(k));
  acc /= mpq_class(kfact);
  acc.canonicalize();
  return acc;
}

FloatVal riesz_mean_float(int k, double x, const ArithTable& table) {
  if (k < 0 || k > 32)
    throw std::invalid_argument("riesz_mean_float: k must lie in [0, 32]");
  if (!(x > 0)) throw std::invalid_argument("riesz_mean_float: x must be positive");
  uint64_t top = static_cast<uint64_t>(std::floor(x));
  if (top > table.limit)
    throw resource_error("riesz_mean_float: x beyond table limit " +
                         std::to_string(table.limit));

  double sum = 0, comp = 0, abs_sum = 0;
  for (uint64_t l = 1; l <= top; ++l) {
    double u = 1.0 - static_cast<double>(l) / x;
    // binary powering keeps the u^k relative error below ~k eps
    double up = 1.0;
    double base = u;
    int e = k;
    while (e > 0) {
      if (e & 1) up *= base;
      base *= base;
      e >>= 1;
    }
    double term = table.ratio(l) * up;
    double y = term - comp;
    double snew = sum + y;
    comp = (snew - sum) - y;
    sum = snew;
    abs_sum += std::fabs(term);
  }
  double kfact = 1;
  for (int j = 2; j <= k; ++j) kfact *= j;
  double eps = 2.220446049250313e-16;
  return {sum / kfact, (k + 4) * eps * abs_sum / kfact};
}

DirichletPartial dirichlet_partial(std::complex<double> s, uint64_t N,
                                   const ArithTable& table) {
  if (N == 0) throw std::invalid_argument("dirichlet_partial: N must be >= 1");
  if (N > table.limit)
    throw resource_error("dirichlet_partial: N beyond table limit " +
                         std::to_string(table.limit));
  const double sigma = s.real(), t = s.imag();

  std::complex<double> sum{1.0, 0.0}, comp{0.0, 0.0};  // n = 1 term
  double abs_sum = 1.0;
  for (uint64_t n = 2; n <= N; ++n) {
    double ln = std::log(static_cast<double>(n));
    double mag = table.ratio(n) * std::exp(-sigma * ln);
    double ph = t * ln;
    std::complex<double> term{mag * std::cos(ph), -mag * std::sin(ph)};
    std::complex<double> y = term - comp;
    std::complex<double> snew = sum + y;
    comp = (snew - sum) - y;
    sum = snew;
    abs_sum += mag;
  }
  double eps = 2.220446049250313e-16;
  double logN = std::log(static_cast<double>(N));
  DirichletPartial out;
  out.sum = {sum, eps * abs_sum * (0.5 * std::fabs(t) * logN + 6.0), false};
  if (sigma > 1.0) {
    out.tail_bound =
        std::pow(static_cast<double>(N), 1.0 - sigma) / (sigma - 1.0);
    out.tail_valid = true;
    out.sum.rigorous = true;
  }
  return out;
}

}  // namespace psilab
