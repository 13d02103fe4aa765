#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "lyap/hill.hpp"
#include "lyap/jordan.hpp"
#include "lyap/linalg.hpp"
#include "lyap/star_linear.hpp"

namespace lyap {

/// A given by Jordan data and B in the bicommutant of A, both materialized.
class BicommutantPair {
 public:
  const JordanSpec& spec() const { return spec_; }
  const BicommElement& b() const { return b_; }
  const Tolerances& tol() const { return tol_; }
  Field field() const { return spec_.field(); }
  Index n() const { return spec_.n(); }
  const Mat& J() const { return j_; }
  const Mat& A() const { return a_; }
  const Mat& B_tilde() const { return bt_; }
  const Mat& B() const { return b_mat_; }

 protected:
  BicommutantPair(JordanSpec spec, BicommElement b, Tolerances tol);

 private:
  JordanSpec spec_;
  BicommElement b_;
  Tolerances tol_;
  Mat j_, a_, bt_, b_mat_;
};

/// Throws PreconditionError unless A is Lyapunov regular.
class LyapunovProblem : public BicommutantPair {
 public:
  LyapunovProblem(JordanSpec spec, BicommElement b, Tolerances tol = {});
};

enum class Verdict { Dominates, NotDominates, Marginal };
std::string_view to_string(Verdict v);
Verdict verdict_from(Psd p);

struct HillPickMatrix {
  Mat H;
  Index w = 0;
  /// First row of each eigenvalue's block in H.
  std::vector<Index> block_partition;
  /// Selected blocks of the n^2 x n^2 matricization, 0-based.
  std::vector<BlockIndex> selection;
  /// positions[k][l]: scalar (row, col) of the matricization holding H(k, l).
  std::vector<std::vector<std::pair<Index, Index>>> positions;
};

struct OracleOutcome {
  bool consistent = true;
  std::size_t trials = 0;
  std::optional<std::size_t> violation_trial;
  std::optional<Mat> violation;  // H with the implication failing
  double violation_min_eig = 0.0;
};

struct DominationReport {
  Verdict verdict = Verdict::Marginal;
  double hill_pick_min_eig = 0.0;
  double hill_pick_band = 0.0;
  double choi_min_eig = 0.0;
  double choi_band = 0.0;
  Psd choi_verdict = Psd::Marginal;
  OracleOutcome oracle;
  bool methods_agree = true;
  HillPickMatrix hill_pick;
};

/// A^T kron I + I kron A^*.
StarLinearMap lyapunov_matricization(const Mat& A);
/// L_B L_A^-1.
StarLinearMap lyapunov_order_map(const LyapunovProblem& prob);
/// L_B L_A^-1 evaluated in Jordan coordinates (A = J_A, B = tilde B).
StarLinearMap jordan_order_map(const LyapunovProblem& prob);

/// Closed-form coefficient f_{j,i}^{a,c} (0-based indices); complex field only.
Complex hill_pick_coefficient(const LyapunovProblem& prob, std::size_t j, int i,
                              std::size_t a, int c);
/// Matricization of L_B L_A^-1 assembled from the closed-form coefficients.
Mat closed_form_order_matricization(const LyapunovProblem& prob);

/// Blocks (o_j + a, o_j) per eigenvalue j, a over the leading block dimension.
std::vector<BlockIndex> hill_pick_selection(const JordanSpec& spec);
std::vector<std::vector<std::pair<Index, Index>>> hill_pick_positions(
    const std::vector<BlockIndex>& selection, Index n);

/// Closed-form Hill-Pick matrix; complex field only.
HillPickMatrix hill_pick_matrix(const LyapunovProblem& prob);
/// Entries of the Jordan-coordinate matricization read at the selection.
HillPickMatrix extracted_hill_pick_matrix(const LyapunovProblem& prob);
/// extracted_hill_pick_matrix for the real field.
HillPickMatrix hill_pick_matrix_real(const LyapunovProblem& prob);

/// H = L_A^-1(W) for W = G G^*, one independent stream per sample.
std::vector<Mat> sample_lyapunov_solutions(const Mat& A, std::size_t count,
                                           std::uint64_t seed, const Tolerances& tol);

/// Tests HA + A^*H >= 0 => HB + B^*H >= 0 on sampled H. Trials are split over
/// `shards` threads; the result does not depend on the shard count.
OracleOutcome domination_oracle(const LyapunovProblem& prob, std::size_t trials,
                                std::uint64_t seed, unsigned shards = 1);

DominationReport check_domination(const LyapunovProblem& prob,
                                  std::size_t oracle_trials, std::uint64_t seed,
                                  unsigned shards = 1);

}  // namespace lyap
