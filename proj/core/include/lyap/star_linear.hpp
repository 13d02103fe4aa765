#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "lyap/linalg.hpp"
#include "lyap/mat.hpp"
#include "lyap/tolerances.hpp"

namespace lyap {

/**
 * Linear map F^{q x q} -> F^{n x n} stored by its n^2 x q^2 matricization L,
 * L vec(V) = vec(map(V)).
 *
 * The constructor only checks the shape; operations that need *-linearity
 * (Hermitian Choi matrix) check it themselves.
 */
class StarLinearMap {
 public:
  StarLinearMap(Index n, Index q, Mat L);

  Index n() const { return n_; }
  Index q() const { return q_; }
  const Mat& L() const { return L_; }
  Field field() const { return L_.field(); }

 private:
  Index n_;
  Index q_;
  Mat L_;
};

Mat apply(const StarLinearMap& map, const Mat& V);

/// nq x nq matrix whose (i, j) block of size n x n is map(E_ij).
Mat choi(const StarLinearMap& map);
StarLinearMap matricization_from_choi(const Mat& BL, Index n, Index q);

/// Entry (k, l) of the n x q block L_ij, all indices 0-based.
inline Complex block_entry(const Mat& L, Index n, Index q, Index i, Index j,
                           Index k, Index l) {
  return L(i * n + k, j * q + l);
}
/// The n x q block L_ij of the matricization.
Mat block(const StarLinearMap& map, Index i, Index j);

bool choi_is_hermitian(const StarLinearMap& map, const Tolerances& tol);
/// Entrywise test l^{ij}_{kl} = conj(l^{kl}_{ij}).
bool has_entry_symmetry(const StarLinearMap& map, const Tolerances& tol);
/// Both tests; throws NumericalError if they disagree.
bool is_star_linear(const StarLinearMap& map, const Tolerances& tol);

/// is_psd of the Choi matrix; throws PreconditionError for non *-linear maps.
PsdReport is_completely_positive(const StarLinearMap& map, const Tolerances& tol);

struct PositivityWitness {
  Mat x;  // in F^n
  Mat z;  // in F^q
  double value = 0.0;  // (z kron x)^* Choi (z kron x)
};

struct SampleTestResult {
  std::optional<PositivityWitness> witness;
  std::size_t trials = 0;
  bool refuted() const { return witness.has_value(); }
};

/// Random unit x, z (real entries for real maps); refutes positivity on a
/// value below -psd_rel * (1 + ||Choi||_2), never certifies it.
SampleTestResult positivity_sample_test(const StarLinearMap& map,
                                        std::size_t trials, std::uint64_t seed,
                                        const Tolerances& tol);

/// Apply f first, then g. Requires g.q() == f.n().
StarLinearMap compose(const StarLinearMap& f, const StarLinearMap& g);
StarLinearMap inverse(const StarLinearMap& map, const Tolerances& tol);

StarLinearMap identity_map(Index n, Field field = Field::Real);
StarLinearMap zero_map(Index n, Index q, Field field = Field::Real);
StarLinearMap transpose_map(Index n);
/// V -> X V X^*.
StarLinearMap conjugation_map(const Mat& X);

}  // namespace lyap
