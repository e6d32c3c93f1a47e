#include "psilab/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace psilab {

PowerLawFit fit_linear(const std::vector<double>& u,
                       const std::vector<double>& v) {
  if (u.size() != v.size())
    throw std::invalid_argument("fit: coordinate lists differ in length");
  const std::size_t n = u.size();
  if (n < 2) throw std::invalid_argument("fit: need at least 2 points");

  double mu = 0, mv = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mu += u[i];
    mv += v[i];
  }
  mu /= static_cast<double>(n);
  mv /= static_cast<double>(n);

  double suu = 0, suv = 0, svv = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double du = u[i] - mu;
    const double dv = v[i] - mv;
    suu += du * du;
    suv += du * dv;
    svv += dv * dv;
  }
  if (suu == 0) throw std::invalid_argument("fit: degenerate (constant) grid");

  PowerLawFit f;
  f.points = n;
  f.slope = suv / suu;
  f.intercept = mv - f.slope * mu;
  const double ss_res = svv - f.slope * suv;
  f.r2 = svv > 0 ? 1.0 - ss_res / svv : 1.0;
  if (n > 2) {
    const double var = std::max(0.0, ss_res) / static_cast<double>(n - 2);
    f.slope_stderr = std::sqrt(var / suu);
  }
  return f;
}

PowerLawFit fit_power_law(const std::vector<double>& x,
                          const std::vector<double>& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("fit: coordinate lists differ in length");
  std::vector<double> u(x.size()), v(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0))
      throw std::invalid_argument(
          "fit: power-law fit needs strictly positive coordinates");
    u[i] = std::log(x[i]);
    v[i] = std::log(y[i]);
  }
  return fit_linear(u, v);
}

}  // namespace psilab
