#include "exlab/rng.hpp"

#include <cstdlib>
#include <string>

namespace exlab {

namespace {

unsigned nth_prime(unsigned n) {
  static const unsigned primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                    41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};
  return n < sizeof(primes) / sizeof(primes[0]) ? primes[n] : 97 + 2 * n;
}

}  // namespace

double Halton::sample(std::uint64_t index, unsigned dim) const {
  const std::uint64_t b = nth_prime(dim);
  double f = 1.0;
  double r = 0.0;
  std::uint64_t i = index;
  while (i > 0) {
    f /= static_cast<double>(b);
    r += f * static_cast<double>(i % b);
    i /= b;
  }
  return r;
}

std::uint64_t global_seed() {
  const char* env = std::getenv("EXTREMAL_LAB_SEED");
  if (!env || !*env) return 0;
  return std::strtoull(env, nullptr, 10);
}

}  // namespace exlab
