#pragma once

#include <cstdint>
#include <random>

#include "lyap/mat.hpp"

namespace lyap {

/// splitmix64 mix of (seed, stream); gives independent per-trial seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal();
  double uniform(double lo, double hi);
  /// Independent standard normal real and imaginary parts.
  Complex complex_normal();
  /// Gaussian matrix; real entries for Field::Real.
  Mat gaussian(Index rows, Index cols, Field field);
  /// Gaussian vector normalized to unit length.
  Mat unit_vector(Index n, Field field);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace lyap
