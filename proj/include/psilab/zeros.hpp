#pragma once

// Zero-ordinate ingestion, refinement, persistent zeta'(rho) tabulation,
// the discrete moment J_{-lambda}(T) = sum_{0<gamma<=T} |zeta'(rho)|^{-2 lambda},
// and the convergence diagnostic for sums of gamma^{-(k-1/2)+eps}/|zeta'(rho)|.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "psilab/zeta.hpp"

namespace psilab {

struct ZeroTable {
  std::vector<double> gamma;                    // strictly increasing, > 0
  std::vector<std::complex<double>> zeta_prime; // zeta'(1/2 + i gamma)
  std::vector<double> zeta_prime_err;
  std::vector<char> refined;                    // per-entry flag
  std::string source_path;
  uint64_t source_checksum = 0;                 // FNV-1a 64 of the file bytes
  bool starts_at_first = false;                 // first ordinate in (14, 15)
  bool tabulated = false;

  std::size_t size() const { return gamma.size(); }
  double max_ordinate() const { return gamma.back(); }
  std::size_t count_below(double T) const;      // # ordinates <= T
};

// Plain-text format: optional '#' comment lines, one ordinate per line as a
// decimal literal with at least 9 fractional digits, strictly increasing, no
// blank lines except a trailing newline. Errors carry path:line.
ZeroTable load_zeros(const std::string& path);

uint64_t fnv1a64(const void* data, std::size_t len);

// Cache file written next to the source: source path + ".zprime.cache".
std::string zeta_prime_cache_path(const std::string& source_path);

struct TabulateParams {
  EvalParams eval;                     // zeta evaluation settings
  double refine_tolerance = 1e-9;      // |zeta(1/2+i gamma)| target
  double simplicity_threshold = 1e-6;  // reject |zeta'(rho)| at or below this
  bool use_cache = true;
};

// Refines every ordinate, evaluates zeta'(rho), and persists the result
// (atomically, with the source checksum embedded) unless a valid cache is
// already present, in which case nothing is recomputed.
void tabulate_zeta_prime(ZeroTable& table, const TabulateParams& params = {});

// J_{-lambda}(T) over tabulated zeros, ascending compensated summation.
// Requires lambda < 3/2 and T <= max ordinate.
double j_lambda(const ZeroTable& table, double lambda, double T);

// Contour height between consecutive ordinates: m = 0 gives gamma_1 / 2;
// otherwise the midpoint of (gamma_m, gamma_{m+1}) so exactly m zeros lie
// below. Requires m < table size.
double midpoint_T(const ZeroTable& table, std::size_t m);

struct TailDiagnostic {
  int k = 2;
  double epsilon = 0;
  // Equal-count split of the available ordinates into 10 runs.
  std::vector<double> block_sums;
  std::vector<double> block_partial_sums;
  double first_to_last_block_ratio = 0;
  // Uniform-T grid {step, 2*step, ...} up to the coverage limit.
  std::vector<double> grid_T;
  std::vector<double> grid_partial_sums;
  std::vector<double> grid_increments;
  bool increments_decay = false;  // last grid increment <= first
  double total = 0;
};

// Partial sums of sum gamma^{-(k-1/2)+eps} / |zeta'(rho)|. Requires k >= 2
// and a tabulated table.
TailDiagnostic tail_diagnostic(const ZeroTable& table, int k, double epsilon,
                               double grid_step = 50.0);

}  // namespace psilab
