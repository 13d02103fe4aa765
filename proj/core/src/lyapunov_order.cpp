#include "lyap/lyapunov_order.hpp"

#include <algorithm>
#include <thread>

#include "lyap/errors.hpp"
#include "lyap/random.hpp"
#include "oracle_detail.hpp"

namespace lyap {

namespace {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r = r * static_cast<std::uint64_t>(n - i) / static_cast<std::uint64_t>(i + 1);
  return r;
}

Complex int_power(Complex base, int e) {
  Complex p = 1.0;
  for (int i = 0; i < e; ++i) p *= base;
  return p;
}

Complex coeff_or_zero(const BicommElement& b, std::size_t j, int k) {
  const auto& t = b.coeffs[j];
  return k >= 0 && k < static_cast<int>(t.size()) ? t[k] : Complex(0.0);
}

void require_complex(const LyapunovProblem& prob, const char* what) {
  if (prob.field() != Field::Complex)
    throw PreconditionError(std::string(what) + " needs the complex field");
}

StarLinearMap order_map_of(const Mat& A, const Mat& B, const Tolerances& tol) {
  const StarLinearMap la = lyapunov_matricization(A);
  const StarLinearMap lb = lyapunov_matricization(B);
  return compose(inverse(la, tol), lb);
}

HillPickMatrix empty_hill_pick(const JordanSpec& spec) {
  HillPickMatrix hp;
  hp.selection = hill_pick_selection(spec);
  hp.positions = hill_pick_positions(hp.selection, spec.n());
  hp.w = static_cast<Index>(hp.selection.size());
  Index off = 0;
  for (std::size_t j = 0; j < spec.eigens().size(); ++j) {
    hp.block_partition.push_back(off);
    off += Index{spec.leading_size(j)} * spec.unit(j);
  }
  return hp;
}

}  // namespace

namespace detail {

SolutionSampler::SolutionSampler(const Mat& op, Index n, Field field,
                                 const Tolerances& tol)
    : n_(n), field_(field) {
  if (rank_tol(op, tol) < static_cast<std::size_t>(op.rows()))
    throw PreconditionError("operator is not invertible");
  lu_.compute(Eigen::MatrixXcd(op.entries()));
}

Mat SolutionSampler::sample(std::uint64_t seed, std::size_t trial) const {
  Rng rng(derive_seed(seed, trial));
  const Mat g = rng.gaussian(n_, n_, field_);
  const Mat w = g * g.adjoint();
  Eigen::VectorXcd rhs(n_ * n_);
  const Mat vw = vec(w);
  for (Index i = 0; i < n_ * n_; ++i) rhs(i) = vw(i, 0);
  const Eigen::VectorXcd h = lu_.solve(rhs);
  CMatrix hm(n_, n_);
  for (Index c = 0; c < n_; ++c)
    for (Index r = 0; r < n_; ++r) hm(r, c) = h(c * n_ + r);
  const CMatrix herm = 0.5 * (hm + hm.adjoint());
  return Mat::computed(herm, field_);
}

OracleOutcome run_oracle(const SolutionSampler& sampler,
                         const std::function<Mat(const Mat&)>& image,
                         std::size_t trials, std::uint64_t seed, unsigned shards,
                         const Tolerances& tol) {
  struct Hit {
    std::size_t trial;
    Mat h;
    double min_eig;
  };
  shards = std::max(1u, std::min<unsigned>(shards, static_cast<unsigned>(std::max<std::size_t>(trials, 1))));
  std::vector<std::optional<Hit>> hits(shards);
  auto work = [&](unsigned s) {
    const std::size_t lo = trials * s / shards;
    const std::size_t hi = trials * (s + 1) / shards;
    for (std::size_t t = lo; t < hi; ++t) {
      Mat h = sampler.sample(seed, t);
      const Mat m = image(h);
      const Mat mh = Mat::computed(0.5 * (m.entries() + m.entries().adjoint()), m.field());
      const PsdReport p = is_psd(mh, tol);
      if (p.verdict == Psd::No) {
        hits[s] = Hit{t, std::move(h), p.min_eig};
        return;
      }
    }
  };
  if (shards == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned s = 0; s < shards; ++s) pool.emplace_back(work, s);
  }
  OracleOutcome out;
  out.trials = trials;
  for (auto& h : hits) {
    if (!h) continue;
    out.consistent = false;
    out.violation_trial = h->trial;
    out.violation = std::move(h->h);
    out.violation_min_eig = h->min_eig;
    break;
  }
  return out;
}

void attach_choi(DominationReport& report, const StarLinearMap& order_map,
                 const Tolerances& tol) {
  const PsdReport c = is_psd(choi(order_map), tol);
  report.choi_min_eig = c.min_eig;
  report.choi_band = c.band;
  report.choi_verdict = c.verdict;
  if (report.verdict == Verdict::Marginal || c.verdict == Psd::Marginal)
    report.methods_agree = true;
  else
    report.methods_agree = (report.verdict == Verdict::Dominates) == (c.verdict == Psd::Yes);
}

}  // namespace detail

BicommutantPair::BicommutantPair(JordanSpec spec, BicommElement b, Tolerances tol)
    : spec_(std::move(spec)), b_(std::move(b)), tol_(tol) {
  tol_.validate();
  validate_bicomm(spec_, b_);
  j_ = build_JA(spec_);
  a_ = build_A(spec_);
  bt_ = build_bicomm_tilde(spec_, b_);
  b_mat_ = build_bicomm_element(spec_, b_);
}

LyapunovProblem::LyapunovProblem(JordanSpec spec, BicommElement b, Tolerances tol)
    : BicommutantPair(std::move(spec), std::move(b), tol) {
  if (!is_lyapunov_regular(this->spec(), this->tol()))
    throw PreconditionError("A is not Lyapunov regular: lambda_i + conj(lambda_j) = 0");
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Dominates:
      return "dominates";
    case Verdict::NotDominates:
      return "not_dominates";
    case Verdict::Marginal:
      return "marginal";
  }
  return "?";
}

Verdict verdict_from(Psd p) {
  switch (p) {
    case Psd::Yes:
      return Verdict::Dominates;
    case Psd::No:
      return Verdict::NotDominates;
    case Psd::Marginal:
      break;
  }
  return Verdict::Marginal;
}

StarLinearMap lyapunov_matricization(const Mat& A) {
  if (!A.is_square()) throw ShapeError("A must be square");
  const Index n = A.rows();
  const Mat i = Mat::identity(n, A.field());
  return StarLinearMap(n, n, kron(A.transpose(), i) + kron(i, A.adjoint()));
}

StarLinearMap lyapunov_order_map(const LyapunovProblem& prob) {
  return order_map_of(prob.A(), prob.B(), prob.tol());
}

StarLinearMap jordan_order_map(const LyapunovProblem& prob) {
  return order_map_of(prob.J(), prob.B_tilde(), prob.tol());
}

Complex hill_pick_coefficient(const LyapunovProblem& prob, std::size_t j, int i,
                              std::size_t a, int c) {
  require_complex(prob, "hill_pick_coefficient");
  const JordanSpec& spec = prob.spec();
  if (j >= spec.eigens().size() || a >= spec.eigens().size() || i < 0 || c < 0 ||
      i >= spec.leading_size(j) || c >= spec.leading_size(a))
    throw ShapeError("Hill-Pick coefficient index out of range");
  const Complex den = spec.eigens()[j].lambda + std::conj(spec.eigens()[a].lambda);
  const BicommElement& b = prob.b();
  Complex sum = 0.0;
  for (int d = 0; d <= c; ++d) {
    const double sign = (d + i) % 2 == 0 ? 1.0 : -1.0;
    sum += static_cast<double>(binomial(d + i, d)) * sign *
           std::conj(coeff_or_zero(b, a, c - d)) / int_power(den, d + i + 1);
  }
  for (int l = 0; l <= i; ++l) {
    const double sign = (i - l + c) % 2 == 0 ? 1.0 : -1.0;
    sum += static_cast<double>(binomial(c + i - l, c)) * sign * coeff_or_zero(b, j, l) /
           int_power(den, c + i - l + 1);
  }
  return sum;
}

Mat closed_form_order_matricization(const LyapunovProblem& prob) {
  require_complex(prob, "closed_form_order_matricization");
  const JordanSpec& spec = prob.spec();
  const Index n = spec.n();
  const auto& blocks = spec.blocks();

  // F[j][i]: n x n, block-diagonal over all Jordan blocks, lower Toeplitz.
  std::vector<std::vector<CMatrix>> F(spec.eigens().size());
  for (std::size_t j = 0; j < spec.eigens().size(); ++j) {
    for (int i = 0; i < spec.leading_size(j); ++i) {
      CMatrix f = CMatrix::Zero(n, n);
      for (const JordanBlock& blk : blocks)
        for (int c = 0; c < blk.size; ++c) {
          const Complex v = hill_pick_coefficient(prob, j, i, blk.eigen, c);
          for (int r = 0; r + c < blk.size; ++r) f(blk.offset + r + c, blk.offset + r) = v;
        }
      F[j].push_back(std::move(f));
    }
  }

  CMatrix lj = CMatrix::Zero(n * n, n * n);
  for (const JordanBlock& blk : blocks)
    for (int i = 0; i < blk.size; ++i)
      for (int r = 0; r + i < blk.size; ++r)
        lj.block((blk.offset + r + i) * n, (blk.offset + r) * n, n, n) = F[blk.eigen][i];

  if (!spec.has_similarity()) return Mat::computed(std::move(lj), Field::Complex);
  const Mat k = kron(spec.P().transpose(), spec.P().adjoint());
  const Mat kinv = kron(spec.P_inverse().transpose(), spec.P_inverse().adjoint());
  return kinv * Mat::computed(std::move(lj), Field::Complex) * k;
}

std::vector<BlockIndex> hill_pick_selection(const JordanSpec& spec) {
  std::vector<BlockIndex> sel;
  for (std::size_t j = 0; j < spec.eigens().size(); ++j) {
    const Index o = spec.group_offset(j);
    const Index len = Index{spec.leading_size(j)} * spec.unit(j);
    for (Index a = 0; a < len; ++a) sel.push_back({o + a, o});
  }
  return sel;
}

std::vector<std::vector<std::pair<Index, Index>>> hill_pick_positions(
    const std::vector<BlockIndex>& selection, Index n) {
  const std::size_t w = selection.size();
  std::vector<std::vector<std::pair<Index, Index>>> pos(w, std::vector<std::pair<Index, Index>>(w));
  for (std::size_t k = 0; k < w; ++k)
    for (std::size_t l = 0; l < w; ++l)
      pos[k][l] = {selection[l].i * n + selection[k].i, selection[l].j * n + selection[k].j};
  return pos;
}

HillPickMatrix hill_pick_matrix(const LyapunovProblem& prob) {
  require_complex(prob, "hill_pick_matrix");
  const JordanSpec& spec = prob.spec();
  HillPickMatrix hp = empty_hill_pick(spec);
  CMatrix h(hp.w, hp.w);
  for (std::size_t ei = 0; ei < spec.eigens().size(); ++ei)
    for (std::size_t ej = 0; ej < spec.eigens().size(); ++ej)
      for (int a = 0; a < spec.leading_size(ei); ++a)
        for (int b = 0; b < spec.leading_size(ej); ++b)
          h(hp.block_partition[ei] + a, hp.block_partition[ej] + b) =
              hill_pick_coefficient(prob, ej, b, ei, a);
  hp.H = Mat::computed(std::move(h), Field::Complex);
  return hp;
}

HillPickMatrix extracted_hill_pick_matrix(const LyapunovProblem& prob) {
  const JordanSpec& spec = prob.spec();
  HillPickMatrix hp = empty_hill_pick(spec);
  const StarLinearMap lj = jordan_order_map(prob);
  CMatrix h(hp.w, hp.w);
  for (Index k = 0; k < hp.w; ++k)
    for (Index l = 0; l < hp.w; ++l) {
      const auto [r, c] = hp.positions[k][l];
      h(k, l) = lj.L()(r, c);
    }
  hp.H = Mat::computed(std::move(h), spec.field());
  return hp;
}

HillPickMatrix hill_pick_matrix_real(const LyapunovProblem& prob) {
  if (prob.field() != Field::Real)
    throw PreconditionError("hill_pick_matrix_real needs the real field");
  return extracted_hill_pick_matrix(prob);
}

std::vector<Mat> sample_lyapunov_solutions(const Mat& A, std::size_t count,
                                           std::uint64_t seed, const Tolerances& tol) {
  const detail::SolutionSampler sampler(lyapunov_matricization(A).L(), A.rows(),
                                        A.field(), tol);
  std::vector<Mat> out;
  out.reserve(count);
  for (std::size_t t = 0; t < count; ++t) out.push_back(sampler.sample(seed, t));
  return out;
}

OracleOutcome domination_oracle(const LyapunovProblem& prob, std::size_t trials,
                                std::uint64_t seed, unsigned shards) {
  const detail::SolutionSampler sampler(lyapunov_matricization(prob.A()).L(), prob.n(),
                                        prob.field(), prob.tol());
  const Mat& B = prob.B();
  const Mat Bs = B.adjoint();
  return detail::run_oracle(
      sampler, [&](const Mat& h) { return h * B + Bs * h; }, trials, seed, shards,
      prob.tol());
}

DominationReport check_domination(const LyapunovProblem& prob, std::size_t oracle_trials,
                                  std::uint64_t seed, unsigned shards) {
  DominationReport rep;
  rep.hill_pick = prob.field() == Field::Complex ? hill_pick_matrix(prob)
                                                 : hill_pick_matrix_real(prob);
  const PsdReport h = is_psd(rep.hill_pick.H, prob.tol());
  rep.verdict = verdict_from(h.verdict);
  rep.hill_pick_min_eig = h.min_eig;
  rep.hill_pick_band = h.band;
  detail::attach_choi(rep, lyapunov_order_map(prob), prob.tol());
  if (oracle_trials > 0) rep.oracle = domination_oracle(prob, oracle_trials, seed, shards);
  return rep;
}

}  // namespace lyap
