#include "lyap/stein.hpp"

#include "lyap/errors.hpp"
#include "oracle_detail.hpp"

namespace lyap {

SteinProblem::SteinProblem(JordanSpec spec, BicommElement b, Tolerances tol)
    : BicommutantPair(std::move(spec), std::move(b), tol) {
  if (!is_stein_regular(this->spec(), this->tol()))
    throw PreconditionError("Stein operator is singular: lambda_i * conj(lambda_j) = 1");
}

StarLinearMap stein_matricization(const Mat& A) {
  if (!A.is_square()) throw ShapeError("A must be square");
  const Index n = A.rows();
  return StarLinearMap(n, n, Mat::identity(n * n, A.field()) - kron(A.conjugate(), A));
}

StarLinearMap stein_order_map(const SteinProblem& prob) {
  const StarLinearMap la = stein_matricization(prob.A());
  const StarLinearMap lb = stein_matricization(prob.B());
  return compose(inverse(la, prob.tol()), lb);
}

std::vector<Mat> sample_stein_solutions(const Mat& A, std::size_t count,
                                        std::uint64_t seed, const Tolerances& tol) {
  const detail::SolutionSampler sampler(stein_matricization(A).L(), A.rows(), A.field(),
                                        tol);
  std::vector<Mat> out;
  out.reserve(count);
  for (std::size_t t = 0; t < count; ++t) out.push_back(sampler.sample(seed, t));
  return out;
}

OracleOutcome stein_oracle(const SteinProblem& prob, std::size_t trials,
                           std::uint64_t seed, unsigned shards) {
  const detail::SolutionSampler sampler(stein_matricization(prob.A()).L(), prob.n(),
                                        prob.field(), prob.tol());
  const Mat& B = prob.B();
  const Mat Bs = B.adjoint();
  return detail::run_oracle(
      sampler, [&](const Mat& h) { return h - B * h * Bs; }, trials, seed, shards,
      prob.tol());
}

DominationReport stein_domination(const SteinProblem& prob, std::size_t oracle_trials,
                                  std::uint64_t seed, unsigned shards) {
  const StarLinearMap map = stein_order_map(prob);
  const HillRep rep = minimal_hill_from_blocks(map, prob.tol());
  DominationReport out;
  out.hill_pick.H = rep.H;
  out.hill_pick.w = static_cast<Index>(rep.r());
  out.hill_pick.selection = rep.selection;
  out.hill_pick.block_partition = {0};
  out.hill_pick.positions.assign(rep.r(), std::vector<std::pair<Index, Index>>(rep.r()));
  for (std::size_t k = 0; k < rep.r(); ++k)
    for (std::size_t l = 0; l < rep.r(); ++l)
      out.hill_pick.positions[k][l] = {rep.selection[k].i * prob.n() + rep.selection[l].i,
                                       rep.selection[k].j * prob.n() + rep.selection[l].j};
  const PsdReport h = cp_via_hill(rep, prob.tol());
  out.verdict = verdict_from(h.verdict);
  out.hill_pick_min_eig = h.min_eig;
  out.hill_pick_band = h.band;
  detail::attach_choi(out, map, prob.tol());
  if (oracle_trials > 0) out.oracle = stein_oracle(prob, oracle_trials, seed, shards);
  return out;
}

}  // namespace lyap
