#pragma once

// Main term, residual E_k(x), the zero sum Y_{k,n}(x,T), their comparison,
// and the exponent diagnostic for the decay of |E_k|.
//
// The analytic object is F(s) = zeta(s) zeta(2^n(s+1)) h_n(s) / zeta(s+1):
// the residue of F(s) x^s / (s(s+1)...(s+k)) at s = 1 gives the main term
// (zeta(4) h_1(1) / ((k+1)! zeta(2))) x, and the residues at s = rho - 1 =
// -1/2 + i gamma give the zero sum
//   Y = Re sum_{0<gamma<=T} zeta(-1/2+i g) zeta(2^{n-1}+2^n i g) h_n(-1/2+i g)
//         / ( zeta'(rho) prod_{j=0}^{k} (j - 1/2 + i g) ) * x^{i g},
// compared against E_k(x) through E_k ~ x^{-1/2} Y.

#include <complex>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "psilab/approx.hpp"
#include "psilab/arith.hpp"
#include "psilab/fit.hpp"
#include "psilab/zeros.hpp"
#include "psilab/zeta.hpp"

namespace psilab {

// Smallest index keeping the residue point -1/2 inside h_n's half-plane is
// n = 2; the default grows like log log x with a +1 margin.
int default_n(double x_max);

// Assumed uncertainty of a refined ordinate, feeding the x^{i gamma} phase
// error d(gamma) * log x in every per-term budget.
inline constexpr double kOrdinateUncertainty = 1e-12;

// (zeta(4) h_1(1) / ((k+1)! zeta(2))) * x with zeta(2) = pi^2/6 and
// zeta(4) = pi^4/90 in closed form; the coefficient is cached per (k, P).
// Requires 0 <= k <= 32 and P >= 10^3.
FloatVal main_term(int k, double x, uint64_t prime_cutoff);

struct RieszSample {
  int k = 0;
  double x = 0;
  bool exact_path = false;  // S_k from the exact rational evaluator
  mpq_class s_exact;        // valid only when exact_path
  double s_value = 0;       // S_k rounded to double
  double s_err = 0;         // float-path bound; ~1 ulp on the exact path
  double main = 0;
  double main_err = 0;
  double residual = 0;      // E_k(x) = s_value - main, evaluated in double
  double zero_sum = 0;            // Y
  double zero_sum_err = 0;        // per-term error budget of Y
  double scaled_zero_sum = 0;     // x^{-1/2} Y
  double discrepancy = 0;         // E_k - x^{-1/2} Y
  double budget = 0;              // error budget excluding exact S_k
};

// Exact rational S_k up to this x; the compensated float path beyond.
inline constexpr double kExactRieszLimit = 20000.0;

// S_k(x) minus the main term; no zero sum yet.
RieszSample residual(int k, double x, const ArithTable& table,
                     uint64_t prime_cutoff);

struct FormulaConfig {
  int k = 2;
  int n = 2;
  std::vector<double> x_grid;
  uint64_t prime_cutoff = 100000;
  const ZeroTable* zeros = nullptr;
  std::size_t zero_count = 0;  // zeros under the contour height
  EvalParams eval;             // settings for the coefficient evaluations
  double simplicity_threshold = 1e-6;
};

// Per-zero residue coefficients are x-independent; computing them once makes
// x-sweeps cheap. Terms are summed in ascending-gamma order, compensated.
class ZeroSumEngine {
 public:
  // Coefficients are prepared for the first coeff_limit zeros only; sum()
  // rejects contour heights that would need more.
  ZeroSumEngine(const ZeroTable& table, int k, int n,
                uint64_t prime_cutoff = 100000, const EvalParams& eval = {},
                double simplicity_threshold = 1e-6,
                std::size_t coeff_limit = SIZE_MAX);

  // Y_{k,n}(x, T); err is the accumulated per-term budget.
  FloatVal sum(double x, double T) const;

  std::size_t terms_below(double T) const { return table_->count_below(T); }
  const std::complex<double>& coefficient(std::size_t i) const {
    return coeff_[i];
  }
  double coefficient_err(std::size_t i) const { return coeff_err_[i]; }
  bool experimental() const { return k_ < 2; }  // no convergence guarantee

 private:
  const ZeroTable* table_;
  int k_;
  int n_;
  std::vector<std::complex<double>> coeff_;  // may cover a table prefix only
  std::vector<double> coeff_err_;
};

// Y_{k,n}(x, T) with T the midpoint after config.zero_count zeros.
FloatVal zero_sum(const FormulaConfig& config, double x);

struct CompareSummary {
  std::size_t grid_points = 0;
  double T_used = 0;
  std::size_t zeros_used = 0;
  double fraction_improved = 0;       // |discrepancy| < |E_k|
  double max_scaled_discrepancy = 0;  // max |discrepancy| * sqrt(x)
  bool doubling_checked = false;
  double T_doubled = 0;
  std::size_t zeros_doubled = 0;
  double doubling_fraction = 0;  // |D_doubled| <= |D| pointwise
  int sign_changes = 0;          // sign changes of E_k along the grid
  bool experimental_k = false;
};

struct CompareReport {
  std::vector<RieszSample> samples;
  CompareSummary summary;
};

CompareReport compare(const FormulaConfig& config, const ArithTable& table);

struct ExponentFit {
  PowerLawFit fit;            // log |E_k| against log x
  std::size_t excluded = 0;   // grid points with E_k = 0
};

// Requires a grid spanning at least 2 decades.
ExponentFit exponent_fit(int k, const std::vector<double>& x_grid,
                         const ArithTable& table, uint64_t prime_cutoff);

}  // namespace psilab
