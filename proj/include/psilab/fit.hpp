#pragma once

// Ordinary least squares on (possibly log-transformed) coordinates, with the
// slope's standard error and R^2 for the diagnostics that fit power laws.

#include <cstddef>
#include <vector>

namespace psilab {

struct PowerLawFit {
  double slope = 0;
  double intercept = 0;
  double slope_stderr = 0;  // 0 when there are only 2 points
  double r2 = 0;
  std::size_t points = 0;
};

// OLS of v against u. Requires >= 2 points and non-constant u.
PowerLawFit fit_linear(const std::vector<double>& u,
                       const std::vector<double>& v);

// OLS of log(y) against log(x). Requires all coordinates > 0.
PowerLawFit fit_power_law(const std::vector<double>& x,
                          const std::vector<double>& y);

}  // namespace psilab
