#include "lyap/random.hpp"

namespace lyap {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::normal() { return normal_(engine_); }

double Rng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

Complex Rng::complex_normal() {
  const double re = normal();
  return {re, normal()};
}

Mat Rng::gaussian(Index rows, Index cols, Field field) {
  CMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j)
      m(i, j) = field == Field::Real ? Complex(normal(), 0.0) : complex_normal();
  return Mat(std::move(m), field);
}

Mat Rng::unit_vector(Index n, Field field) {
  Mat v = gaussian(n, 1, field);
  const double nv = v.norm();
  return nv > 0.0 ? (1.0 / nv) * v : Mat::basis_vector(n, 0).with_field(field);
}

}  // namespace lyap
