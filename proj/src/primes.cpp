#include "psilab/primes.hpp"

#include <stdexcept>

namespace psilab {

std::vector<uint32_t> primes_up_to(uint64_t limit) {
  if (limit > (1ull << 32))
    throw std::invalid_argument("primes_up_to: limit above 2^32");
  if (limit < 2) return {};
  std::vector<bool> comp(limit + 1, false);
  std::vector<uint32_t> primes;
  for (uint64_t i = 2; i <= limit; ++i) {
    if (comp[i]) continue;
    primes.push_back(static_cast<uint32_t>(i));
    for (uint64_t j = i * i; j <= limit; j += i) comp[j] = true;
  }
  return primes;
}

}  // namespace psilab
