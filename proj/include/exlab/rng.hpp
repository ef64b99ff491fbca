#ifndef EXLAB_RNG_HPP
#define EXLAB_RNG_HPP

#include <cstdint>
#include <random>

namespace exlab {

// Deterministic uniform sampling. mt19937_64 has a standard-mandated output
// sequence; we convert to doubles ourselves because uniform_real_distribution
// is implementation-defined and would break byte-identical reports.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // uniform in [0, 1)
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // uniform in [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

 private:
  std::mt19937_64 engine_;
};

// Low-discrepancy Halton point set, one prime base per dimension.
// sample(i, d) is the i-th point's d-th coordinate in [0, 1).
class Halton {
 public:
  double sample(std::uint64_t index, unsigned dim) const;
};

// Sampling seed: EXTREMAL_LAB_SEED from the environment, default 0.
std::uint64_t global_seed();

}  // namespace exlab

#endif
