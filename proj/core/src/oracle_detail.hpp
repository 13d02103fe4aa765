#pragma once

#include <cstdint>
#include <functional>

#include "lyap/lyapunov_order.hpp"

namespace lyap::detail {

/// Solves op(H) = W for random PSD W, with op given by its n^2 x n^2 matricization.
class SolutionSampler {
 public:
  SolutionSampler(const Mat& op, Index n, Field field, const Tolerances& tol);
  Mat sample(std::uint64_t seed, std::size_t trial) const;

 private:
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
  Index n_;
  Field field_;
};

/// First trial whose image(H) is not PSD within tolerance, over `shards` threads.
OracleOutcome run_oracle(const SolutionSampler& sampler,
                         const std::function<Mat(const Mat&)>& image,
                         std::size_t trials, std::uint64_t seed, unsigned shards,
                         const Tolerances& tol);

/// Fills the Choi fields and agreement flag of a report whose Hill fields are set.
void attach_choi(DominationReport& report, const StarLinearMap& order_map,
                 const Tolerances& tol);

}  // namespace lyap::detail
