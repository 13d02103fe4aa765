#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "lyap/mat.hpp"
#include "lyap/tolerances.hpp"

namespace lyap {

/// Column-stacking vectorization: vec(E_lk) = e_{k*rows + l} (0-based).
Mat vec(const Mat& m);
/// Inverse of vec for the given shape.
Mat unvec(const Mat& v, Index rows, Index cols);
Mat kron(const Mat& a, const Mat& b);
Mat hadamard(const Mat& a, const Mat& b);

/**
 * Sum over i < m, j < n of E_ij^(m x n) kron E_ji^(n x m).
 *
 * Maps v kron u to u kron v for u in F^m, v in F^n, and vec(X^T) to vec(X)
 * for X of size n x m. Inverse is canonical_shuffle(n, m).
 */
Mat canonical_shuffle(Index m, Index n);

std::vector<double> singular_values(const Mat& m);
/// Number of singular values above rank_rel * sigma_max.
std::size_t rank_tol(const Mat& m, const Tolerances& tol);

enum class Psd { Yes, No, Marginal };
std::string_view to_string(Psd p);

struct PsdReport {
  Psd verdict = Psd::Yes;
  double min_eig = 0.0;
  double band = 0.0;  // psd_rel * (1 + ||Ms||_2)

  /// True unless the smallest eigenvalue lies below -band.
  bool within_tolerance() const { return verdict != Psd::No; }
};

/**
 * PSD test on the Hermitian part Ms of m.
 *
 * No when lambda_min(Ms) < -band. Inside [-band, 0] the verdict is Marginal
 * only when lambda_min is below -band * kMarginalFraction; eigenvalues at
 * rounding level count as zero and give Yes. Throws PreconditionError when m
 * is not Hermitian within eq_rel * (1 + ||m||_F).
 */
PsdReport is_psd(const Mat& m, const Tolerances& tol);
inline constexpr double kMarginalFraction = 1e-2;

bool is_hermitian(const Mat& m, const Tolerances& tol);
std::vector<double> hermitian_eigenvalues(const Mat& m);
double spectral_norm(const Mat& m);

/// ||a - b||_F / (1 + ||a||_F).
double relative_difference(const Mat& a, const Mat& b);

/// Throws PreconditionError when m is singular at rank_rel.
Mat inverse(const Mat& m, const Tolerances& tol);

/// Orthonormal basis (as columns) of the null space at rank_rel.
Mat null_space(const Mat& m, const Tolerances& tol);

/// Sine of the largest principal angle between two column spans with
/// orthonormal bases; 1 when the dimensions differ.
double max_principal_angle_sine(const Mat& basis_a, const Mat& basis_b);

}  // namespace lyap
