#pragma once

// Plain Eratosthenes prime list for the Euler-product loops. The arith
// module keeps its own smallest-prime-factor sieve; this one only needs
// the primes themselves.

#include <cstdint>
#include <vector>

namespace psilab {

std::vector<uint32_t> primes_up_to(uint64_t limit);

}  // namespace psilab
