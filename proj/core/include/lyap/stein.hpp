#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lyap/lyapunov_order.hpp"

namespace lyap {

/// Throws PreconditionError unless lambda_i * conj(lambda_j) != 1 for all pairs.
class SteinProblem : public BicommutantPair {
 public:
  SteinProblem(JordanSpec spec, BicommElement b, Tolerances tol = {});
};

/// I - conj(A) kron A.
StarLinearMap stein_matricization(const Mat& A);
StarLinearMap stein_order_map(const SteinProblem& prob);

/// H solving H - A H A^* = W for W = G G^*.
std::vector<Mat> sample_stein_solutions(const Mat& A, std::size_t count,
                                        std::uint64_t seed, const Tolerances& tol);

OracleOutcome stein_oracle(const SteinProblem& prob, std::size_t trials,
                           std::uint64_t seed, unsigned shards = 1);

/// Verdict from the minimal Hill matrix of the order map, cross-checked by
/// its Choi matrix and the sampling oracle.
DominationReport stein_domination(const SteinProblem& prob, std::size_t oracle_trials,
                                  std::uint64_t seed, unsigned shards = 1);

}  // namespace lyap
