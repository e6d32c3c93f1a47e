#include "psilab/bernoulli.hpp"

#include <stdexcept>
#include <vector>

namespace psilab {

namespace {

std::vector<mpq_class> build_table() {
  std::vector<mpq_class> b(kMaxBernoulli + 1);
  b[0] = 1;
  // sum_{j=0}^{m} C(m+1,j) B_j = 0 for m >= 1, so
  // B_m = -(1/(m+1)) sum_{j<m} C(m+1,j) B_j.
  for (int m = 1; m <= kMaxBernoulli; ++m) {
    mpq_class acc = 0;
    for (int j = 0; j < m; ++j) {
      if (j > 1 && (j & 1)) continue;  // odd B_j vanish
      mpz_class binom;
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned>(m + 1),
                   static_cast<unsigned>(j));
      acc += mpq_class(binom) * b[j];
    }
    b[m] = -acc / (m + 1);
    b[m].canonicalize();
  }
  return b;
}

}  // namespace

const mpq_class& bernoulli_exact(int n) {
  static const std::vector<mpq_class> table = build_table();
  if (n < 0 || n > kMaxBernoulli)
    throw std::invalid_argument("bernoulli_exact: n out of range [0, 60]: " +
                                std::to_string(n));
  return table[static_cast<size_t>(n)];
}

}  // namespace psilab
