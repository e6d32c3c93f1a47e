#pragma once

// Certified evaluation of zeta, zeta', the functional-equation factor chi,
// the phase function theta, Hardy's Z, and critical-line zero refinement.
//
// Method: Euler-Maclaurin for Re s > -1/2 (the corrected partial sum with a
// provable remainder bound), reflection zeta(s) = chi(s) zeta(1-s) further
// left. chi is evaluated in log space through Stirling's series for
// log Gamma, so nothing overflows up to the documented ceiling on |Im s|.
//
// Error bounds are rigorous (analytic remainder + weighted rounding) for
// Re s > 1 and heuristic in the strip; ApproxComplex::rigorous records
// which. Evaluators climb the precision ladder (53 -> 64 -> 113 bits) when
// a target error is requested and missed at the current rung.

#include <complex>

#include "psilab/approx.hpp"

namespace psilab {

// Evaluation knobs shared by all analytic operations.
// Invariant: the Euler-Maclaurin cutoff actually used is
// max(em_terms, 10, ceil(cutoff_multiplier * |Im s|)), which enforces the
// accuracy floor cutoff >= |Im s|/4 by construction.
struct EvalParams {
  int em_terms = 0;                 // 0 = automatic cutoff
  int bernoulli_order = 30;         // even, 4..60; q = order/2 correction terms
  int working_precision_bits = 53;  // 53 | 64 | 113
  double cutoff_multiplier = 2.0;
  double target_abs_err = 0;        // >0: required bound, ladder climbs to meet it
};

// Documented ceiling on |Im s|; evaluations above it are rejected.
inline constexpr double kImagCeiling = 1e5;

ApproxComplex zeta(std::complex<double> s, const EvalParams& params = {});
ApproxComplex zeta_prime(std::complex<double> s, const EvalParams& params = {});
ApproxComplex chi(std::complex<double> s, const EvalParams& params = {});

// Phase theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi, continuous in t.
double hardy_theta(double t, const EvalParams& params = {});

// Z(t) = Re( e^{i theta(t)} zeta(1/2 + it) ); real up to the error bound.
FloatVal hardy_z(double t, const EvalParams& params = {});

struct RefineResult {
  double gamma;     // refined ordinate
  double abs_zeta;  // |zeta(1/2 + i gamma)| at the result
  double zeta_err;  // error bound reported by the zeta evaluation there
  int iterations;
};

// Newton iteration on Z(t), guarded by a sign-change bracket, from a guess
// within 0.5 of a simple zero's ordinate. Stops when |zeta| <= tolerance.
// Throws eval_error on non-convergence (message carries the best iterate)
// and a distinct eval_error when |Z'| falls below derivative_floor
// (suspected non-simple zero).
RefineResult refine_zero(double gamma_guess, const EvalParams& params = {},
                         double tolerance = 1e-9,
                         double derivative_floor = 1e-6);

}  // namespace psilab
