#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "lyap/mat.hpp"
#include "lyap/tolerances.hpp"

namespace lyap {

/// An eigenvalue with its Jordan block sizes, largest first.
struct EigenBlock {
  Complex lambda;
  std::vector<int> sizes;
};

/// One Jordan block placed in the global index space of J_A.
struct JordanBlock {
  std::size_t eigen = 0;  // index into JordanSpec::eigens()
  std::size_t copy = 0;   // position within EigenBlock::sizes
  Index offset = 0;       // first row of the block in J_A
  int size = 0;           // Jordan size (in 2x2 units for a real-field pair)
  int unit = 1;           // 2 for a complex eigenvalue over the reals
  Index dim() const { return Index{size} * unit; }
};

/**
 * Jordan data of A = P J_A P^-1.
 *
 * Over the reals a complex eigenvalue is listed once with positive imaginary
 * part and realized by 2x2 blocks [[a, b], [-b, a]].
 */
class JordanSpec {
 public:
  static constexpr int kMaxBlockSize = 30;

  JordanSpec(Field field, std::vector<EigenBlock> eigens,
             std::optional<Mat> similarity = std::nullopt,
             const Tolerances& tol = {});

  Field field() const { return field_; }
  const std::vector<EigenBlock>& eigens() const { return eigens_; }
  Index n() const { return n_; }
  bool has_similarity() const { return has_p_; }
  const Mat& P() const { return p_; }
  const Mat& P_inverse() const { return p_inv_; }
  const std::vector<JordanBlock>& blocks() const { return blocks_; }

  /// 2 for a complex eigenvalue over the reals, else 1.
  int unit(std::size_t eigen) const;
  Index group_offset(std::size_t eigen) const { return group_offset_[eigen]; }
  Index group_dim(std::size_t eigen) const { return group_dim_[eigen]; }
  int leading_size(std::size_t eigen) const { return eigens_[eigen].sizes.front(); }

  /// Eigenvalues of A with multiplicity, conjugates included over the reals.
  std::vector<Complex> eigenvalues() const;

  JordanSpec with_similarity(std::optional<Mat> similarity,
                             const Tolerances& tol = {}) const;

 private:
  Field field_;
  std::vector<EigenBlock> eigens_;
  bool has_p_ = false;
  Mat p_;
  Mat p_inv_;
  Index n_ = 0;
  std::vector<JordanBlock> blocks_;
  std::vector<Index> group_offset_;
  std::vector<Index> group_dim_;
};

/// Toeplitz coefficients t_{j,0..n_{j,1}-1} per eigenvalue.
struct BicommElement {
  std::vector<std::vector<Complex>> coeffs;
};

Mat build_JA(const JordanSpec& spec);
Mat build_A(const JordanSpec& spec);
bool is_lyapunov_regular(const JordanSpec& spec, const Tolerances& tol = {});
/// lambda_i * conj(lambda_j) != 1 for all pairs.
bool is_stein_regular(const JordanSpec& spec, const Tolerances& tol = {});

/// Throws ShapeError / PreconditionError when b does not fit spec.
void validate_bicomm(const JordanSpec& spec, const BicommElement& b);
/// Block-diagonal repeated Toeplitz matrix in Jordan coordinates.
Mat build_bicomm_tilde(const JordanSpec& spec, const BicommElement& b);
/// P * tilde(B) * P^-1.
Mat build_bicomm_element(const JordanSpec& spec, const BicommElement& b);

struct Membership {
  bool member = false;
  /// First violating entry of P^-1 B P in row-major order.
  std::optional<std::pair<Index, Index>> witness;
  double deviation = 0.0;
};

Membership check_bicomm_membership(const JordanSpec& spec, const Mat& B,
                                   const Tolerances& tol);
/// Throws PreconditionError (with the witness) for a nonmember.
BicommElement extract_bicomm_coeffs(const JordanSpec& spec, const Mat& B,
                                    const Tolerances& tol);

/// t_{j,i} = f(lambda_j, i), e.g. the Taylor coefficients f^(i)(lambda)/i!.
BicommElement bicomm_from_taylor(
    const JordanSpec& spec, const std::function<Complex(Complex, int)>& coeff);
BicommElement bicomm_identity(const JordanSpec& spec);
/// Coefficients of A itself.
BicommElement bicomm_of_A(const JordanSpec& spec);
/// Coefficients of (A + shift I)^-1.
BicommElement bicomm_shifted_inverse(const JordanSpec& spec, Complex shift);

BicommElement operator+(const BicommElement& a, const BicommElement& b);
BicommElement operator*(Complex s, const BicommElement& a);

}  // namespace lyap
