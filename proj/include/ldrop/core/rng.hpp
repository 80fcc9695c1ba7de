#pragma once

#include <cstdint>
#include <random>

#include "ldrop/core/types.hpp"

namespace ldrop {

std::uint64_t splitmix64(std::uint64_t x);

// Seed of the independent stream number `index` derived from a master seed.
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index);

// mt19937_64 with distribution code written out so that draws are identical
// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform();                       // [0, 1)
  double uniform(double lo, double hi);   // [lo, hi)
  double normal();                        // standard normal, Box-Muller
  Vec3 unit_vector();
  Mat3 rotation();                        // Haar-uniform on SO(3)

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ldrop
