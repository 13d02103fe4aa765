#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "lyap/jordan.hpp"
#include "lyap/linalg.hpp"
#include "lyap/star_linear.hpp"

namespace lyap {

/// 0-based index (i, j) of the n x q block L_ij of a matricization.
struct BlockIndex {
  Index i = 0;
  Index j = 0;
  friend bool operator==(const BlockIndex&, const BlockIndex&) = default;
};

/**
 * Hill representation map(V) = sum_{k,l} H_kl A_l V A_k^*, i.e.
 * L = sum_{k,l} H_kl conj(A_k) kron A_l and Choi = Ahat^* H^T Ahat.
 */
struct HillRep {
  Index n = 0;
  Index q = 0;
  std::vector<Mat> A;
  Mat H;
  std::vector<BlockIndex> selection;
  bool minimal = false;

  std::size_t r() const { return A.size(); }
};

/// r x nq matrix with rows vec(A_k)^*.
struct AhatMatrix {
  Mat Ahat;
};

AhatMatrix ahat(const HillRep& rep);

/// Greedy row-major selection of independent blocks; H_kl is entry
/// (i_l, j_l) of block (i_k, j_k).
HillRep minimal_hill_from_blocks(const StarLinearMap& map, const Tolerances& tol);

/// H with H^T = (Ahat Ahat^*)^-1 Ahat Choi Ahat^* (Ahat Ahat^*)^-1.
Mat hill_from_choi(const StarLinearMap& map, const AhatMatrix& ahat,
                   const Tolerances& tol);

/// Construction over a spanning selection; A_k is pinned to 1 at its own
/// block and 0 at the others unless the selection repeats a block.
HillRep nonminimal_hill(const StarLinearMap& map,
                        const std::vector<BlockIndex>& selection,
                        const Tolerances& tol);

StarLinearMap reconstruct_map(const HillRep& rep);
/// sum_{k,l} H_kl A_l V A_k^*.
Mat apply_hill(const HillRep& rep, const Mat& V);

/// is_psd(H); a minimal rep with singular H gives Marginal instead of Yes.
PsdReport cp_via_hill(const HillRep& rep, const Tolerances& tol);

enum class Triangularity {
  Lower,  // block span inside P^-* {J^T}'' P^* (Lyapunov order maps)
  Upper,  // block span inside P {J}'' P^-1 (Stein order maps)
};

struct StructuredWitness {
  JordanSpec spec;
  Triangularity pattern = Triangularity::Lower;
};

struct RandomizedWitness {
  std::size_t trials = 32;
  std::uint64_t seed = 0;
};

using WitnessStrategy = std::variant<StructuredWitness, RandomizedWitness>;

bool is_c1_witness(const HillRep& rep, const Mat& z, const Tolerances& tol);
bool is_c2_witness(const HillRep& rep, const Mat& x, const Tolerances& tol);

/// z in F^q with rank(Ahat (z kron I_n)) = r.
std::optional<Mat> find_c1_witness(const HillRep& rep, const WitnessStrategy& strategy,
                                   const Tolerances& tol);
/// x in F^n with rank(Ahat (I_q kron x)) = r.
std::optional<Mat> find_c2_witness(const HillRep& rep, const WitnessStrategy& strategy,
                                   const Tolerances& tol);

/// Candidate structured vectors before the rank check.
Mat structured_c1_vector(const StructuredWitness& s);
Mat structured_c2_vector(const StructuredWitness& s);

struct CpCertificate {
  enum class Kind { C1, C2 };
  bool certified = false;
  Kind kind = Kind::C1;
  std::optional<Mat> witness;
  std::size_t m = 0;
};

/// Minimal rep plus a randomized (C1), then (C2), witness search.
CpCertificate positivity_equals_cp_certificate(const StarLinearMap& map,
                                               const Tolerances& tol,
                                               RandomizedWitness search = {});

}  // namespace lyap
