#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace psilab {

// Evaluation could not reach the requested accuracy (or a numeric
// precondition failed at run time). Distinct from domain errors so the
// CLI can map it to the "resource" exit code.
struct eval_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or missing data file (zeros file, cache).
struct data_file_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Request exceeds a documented coverage/size limit (table limit, T beyond
// the zero table, memory cap).
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A real value with an absolute error bound, for the float fast paths.
struct FloatVal {
  double value = 0;
  double err = 0;
};

// Complex value with a non-negative absolute error bound. `rigorous`
// distinguishes provable bounds (analytic tails) from heuristic ones
// (method agreement, estimated rounding). Propagation is first order
// with the cross term kept, so the bounds survive composition.
struct ApproxComplex {
  std::complex<double> value{0.0, 0.0};
  double err = 0;
  bool rigorous = true;

  double abs() const { return std::abs(value); }

  static ApproxComplex exact(std::complex<double> v) { return {v, 0.0, true}; }
};

inline ApproxComplex operator+(const ApproxComplex& a, const ApproxComplex& b) {
  return {a.value + b.value, a.err + b.err, a.rigorous && b.rigorous};
}

inline ApproxComplex operator-(const ApproxComplex& a, const ApproxComplex& b) {
  return {a.value - b.value, a.err + b.err, a.rigorous && b.rigorous};
}

inline ApproxComplex operator*(const ApproxComplex& a, const ApproxComplex& b) {
  double am = std::abs(a.value), bm = std::abs(b.value);
  return {a.value * b.value, am * b.err + bm * a.err + a.err * b.err,
          a.rigorous && b.rigorous};
}

// Division requires the denominator to be bounded away from zero by its
// own error bound; otherwise no finite error bound exists.
inline ApproxComplex operator/(const ApproxComplex& a, const ApproxComplex& b) {
  double bm = std::abs(b.value);
  if (!(bm > b.err))
    throw eval_error("ApproxComplex division: denominator magnitude " +
                     std::to_string(bm) + " not above its error bound " +
                     std::to_string(b.err));
  std::complex<double> q = a.value / b.value;
  // |a/b - q_true| <= (|a| err_b / |b| + err_a) / (|b| - err_b)
  double err = (std::abs(a.value) * b.err / bm + a.err) / (bm - b.err);
  return {q, err, a.rigorous && b.rigorous};
}

inline ApproxComplex operator*(double c, const ApproxComplex& a) {
  return {c * a.value, std::fabs(c) * a.err, a.rigorous};
}

// True when the two values agree within the sum of their error bounds
// plus an extra slack.
inline bool agrees(const ApproxComplex& a, const ApproxComplex& b,
                   double slack = 0) {
  return std::abs(a.value - b.value) <= a.err + b.err + slack;
}

}  // namespace psilab
