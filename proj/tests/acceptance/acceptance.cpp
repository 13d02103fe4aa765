// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "lyap/hill.hpp"
#include "lyap/lyapunov_order.hpp"
#include "lyap/stein.hpp"
#include "test_support.hpp"

namespace {

using namespace lyap;
using testing::BKind;

// Pinned tolerances.
constexpr double kClosedFormTol = 1e-8;
constexpr double kClosedFormSeconds = 10.0;
constexpr double kBand = 1e-9;  // |lambda_min| <= kBand * (1 + ||M||_2) is marginal
constexpr double kPickTol = 1e-12;
constexpr double kHillTol = 1e-9;
constexpr std::size_t kOracleTrials = 1000;
constexpr std::size_t kWitnessTrials = 32;

struct Outcome {
  bool pass = true;
  std::string detail;
};

void note(Outcome& o, bool ok, const std::string& what) {
  if (!ok && o.pass) o.detail = what;
  o.pass = o.pass && ok;
}

/// Literal PSD call with the marginal band: +1 psd, -1 not, 0 marginal.
int psd_sign(const Mat& m) {
  const std::vector<double> ev = hermitian_eigenvalues(m);
  const double lo = *std::min_element(ev.begin(), ev.end());
  const double band = kBand * (1.0 + spectral_norm(m));
  if (std::abs(lo) <= band) return 0;
  return lo > 0 ? 1 : -1;
}

/// Choi-side call: PSD unless lambda_min < -band.
bool choi_psd(const StarLinearMap& map) {
  const Mat c = choi(map);
  const std::vector<double> ev = hermitian_eigenvalues(c);
  return *std::min_element(ev.begin(), ev.end()) >= -kBand * (1.0 + spectral_norm(c));
}

std::vector<LyapunovProblem> complex_problems() {
  Rng rng(20240101);
  std::vector<LyapunovProblem> out;
  for (std::size_t k = 0; k < 100; ++k)
    out.push_back(testing::random_problem(rng, {Field::Complex, 8, 3, true, 20.0}, testing::kind_for(k)));
  return out;
}

Outcome criterion1(const std::vector<LyapunovProblem>& probs) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    const double e = relative_difference(lyapunov_order_map(probs[k]).L(),
                                         closed_form_order_matricization(probs[k]));
    worst = std::max(worst, e);
    note(o, e <= kClosedFormTol, "problem " + std::to_string(k) + " error " + std::to_string(e));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  note(o, secs <= kClosedFormSeconds, "runtime " + std::to_string(secs) + " s");
  if (o.pass) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "max rel error %.2e over %zu problems in %.2f s", worst, probs.size(), secs);
    o.detail = buf;
  }
  return o;
}

Outcome criterion2(const std::vector<LyapunovProblem>& probs) {
  Outcome o;
  int compared = 0, dominated = 0, excluded = 0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    const int h = psd_sign(hill_pick_matrix(probs[k]).H);
    if (h == 0) {
      ++excluded;
      continue;
    }
    ++compared;
    dominated += h > 0;
    note(o, (h > 0) == choi_psd(lyapunov_order_map(probs[k])), "disagreement on problem " + std::to_string(k));
  }
  note(o, compared > 0, "no non-marginal problems");
  if (o.pass)
    o.detail = std::to_string(compared) + " compared (" + std::to_string(dominated) + " dominated), " +
               std::to_string(excluded) + " marginal excluded, 0 disagreements";
  return o;
}

Outcome criterion3(const std::vector<LyapunovProblem>& probs) {
  Outcome o;
  int checked = 0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (check_domination(probs[k], 0, 0).verdict != Verdict::Dominates) continue;
    ++checked;
    const OracleOutcome r = domination_oracle(probs[k], kOracleTrials, k);
    note(o, r.consistent, "oracle violation on dominated problem " + std::to_string(k));
  }
  const LyapunovProblem pair(JordanSpec(Field::Complex, {{1.0, {1}}, {2.0, {1}}}),
                             BicommElement{{{1.0}, {3.0}}});
  const Mat H = hill_pick_matrix(pair).H;
  const double det = (H(0, 0) * H(1, 1) - H(0, 1) * H(1, 0)).real();
  note(o, std::abs(det + 5.0 / 18.0) <= kPickTol, "Pick determinant " + std::to_string(det));
  const OracleOutcome v = domination_oracle(pair, kOracleTrials, 0);
  note(o, !v.consistent, "no violation found for diag(1,2) / diag(1,3)");
  if (o.pass)
    o.detail = std::to_string(checked) + " dominated problems consistent over " + std::to_string(kOracleTrials) +
               " samples; diag(1,3) violated at trial " + std::to_string(*v.violation_trial);
  return o;
}

Outcome criterion4() {
  Outcome o;
  Rng rng(4);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Complex> lambda, t;
    std::vector<EigenBlock> eig;
    BicommElement b;
    for (int i = 0; i < 4; ++i) {
      lambda.push_back(Complex(0.3 + 0.6 * i + rng.uniform(0.0, 0.3), rng.uniform(-2.0, 2.0)));
      t.push_back(rng.complex_normal());
      eig.push_back({lambda.back(), {1}});
      b.coeffs.push_back({t.back()});
    }
    const LyapunovProblem p(JordanSpec(Field::Complex, eig), b);
    const Mat H = hill_pick_matrix(p).H;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const Complex f = (std::conj(t[i]) + t[j]) / (std::conj(lambda[i]) + lambda[j]);
        worst = std::max(worst, std::abs(H(i, j) - f));
      }
    BicommElement same;
    for (const Complex& l : lambda) same.coeffs.push_back({l});
    const Mat ones = hill_pick_matrix(LyapunovProblem(JordanSpec(Field::Complex, eig), same)).H;
    double off = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) off = std::max(off, std::abs(ones(i, j) - 1.0));
    note(o, off <= kPickTol, "B = A not all-ones, deviation " + std::to_string(off));
    note(o, rank_tol(ones, {}) == 1, "B = A Pick matrix rank != 1");
    note(o, is_psd(ones, {}).verdict == Psd::Yes, "B = A Pick matrix not PSD");
  }
  note(o, worst <= kPickTol, "entry deviation " + std::to_string(worst));
  if (o.pass) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "max entry deviation %.2e over 50 problems; B = A all-ones, rank 1, PSD", worst);
    o.detail = buf;
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  Rng rng(5);
  const Tolerances tol;
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const Index n = 1 + k % 4, q = 1 + (k / 4) % 4;
    const Index m = 1 + (k / 16) % std::min<Index>(4, n * q);
    const Field f = k % 3 == 0 ? Field::Real : Field::Complex;
    const bool cp = k % 2 == 0;
    const StarLinearMap map = testing::random_hill_map(rng, n, q, m, f, cp);
    const std::string id = "map " + std::to_string(k);

    const HillRep rep = minimal_hill_from_blocks(map, tol);
    const double rec = relative_difference(map.L(), reconstruct_map(rep).L());
    const Mat a = ahat(rep).Ahat;
    const double fac = relative_difference(choi(map), a.adjoint() * rep.H.transpose() * a);
    const Mat ka = null_space(a, tol), kc = null_space(choi(map), tol);
    const double ang = (ka.cols() == 0 && kc.cols() == 0) ? 0.0 : max_principal_angle_sine(ka, kc);
    worst = std::max({worst, rec, fac, ang});
    note(o, rec <= kHillTol, id + ": reconstruction " + std::to_string(rec));
    note(o, fac <= kHillTol, id + ": factorization " + std::to_string(fac));
    note(o, ka.cols() == kc.cols() && ang <= kHillTol, id + ": kernels differ");

    std::vector<BlockIndex> all;
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < q; ++j) all.push_back({i, j});
    const HillRep full = nonminimal_hill(map, all, tol);
    const double frec = relative_difference(map.L(), reconstruct_map(full).L());
    worst = std::max(worst, frec);
    note(o, frec <= kHillTol, id + ": non-minimal reconstruction " + std::to_string(frec));
    note(o, rank_tol(full.H, tol) == rank_tol(choi(map), tol), id + ": rank of pinned H differs from Choi rank");

    const Psd hill = cp_via_hill(rep, tol).verdict, ch = is_completely_positive(map, tol).verdict;
    note(o, hill == ch && hill == (cp ? Psd::Yes : Psd::No), id + ": CP verdicts disagree");
  }
  if (o.pass) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "200 maps, worst identity residual %.2e", worst);
    o.detail = buf;
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  Rng rng(6);
  const Tolerances tol;
  int structured = 0, randomized = 0;
  for (int k = 0; k < 100; ++k) {
    const Field f = k % 2 ? Field::Real : Field::Complex;
    const LyapunovProblem p = testing::random_problem(rng, {f, 8, 3, false, 20.0}, BKind::Random);
    const HillRep rep = minimal_hill_from_blocks(lyapunov_order_map(p), tol);
    const StructuredWitness s{p.spec(), Triangularity::Lower};
    const bool c1 = find_c1_witness(rep, s, tol).has_value();
    const bool c2 = find_c2_witness(rep, s, tol).has_value();
    note(o, c1 && c2, "structured witness failed on problem " + std::to_string(k) + " (" +
                          std::string(to_string(f)) + ")");
    structured += c1 && c2;
  }
  for (int k = 0; k < 100; ++k) {
    const LyapunovProblem p = testing::random_problem(rng, {Field::Complex, 8, 3, true, 20.0}, BKind::Random);
    const HillRep rep = minimal_hill_from_blocks(lyapunov_order_map(p), tol);
    const bool ok = find_c1_witness(rep, RandomizedWitness{kWitnessTrials, static_cast<std::uint64_t>(k)}, tol)
                        .has_value();
    note(o, ok, "randomized search failed on problem " + std::to_string(k));
    randomized += ok;
  }
  if (o.pass)
    o.detail = "structured " + std::to_string(structured) + "/100 (P = I), randomized " +
               std::to_string(randomized) + "/100 (random P, <= 32 trials)";
  return o;
}

Outcome criterion7() {
  Outcome o;
  Rng rng(7);
  int compared = 0, pairs = 0, dominated = 0;
  for (std::size_t k = 0; k < 50; ++k) {
    const LyapunovProblem p = testing::random_problem(rng, {Field::Real, 8, 3, true, 20.0}, testing::kind_for(k));
    pairs += std::any_of(p.spec().eigens().begin(), p.spec().eigens().end(),
                         [](const EigenBlock& e) { return e.lambda.imag() != 0.0; });
    const int h = psd_sign(hill_pick_matrix_real(p).H);
    if (h == 0) continue;
    ++compared;
    dominated += h > 0;
    note(o, (h > 0) == choi_psd(lyapunov_order_map(p)), "disagreement on real problem " + std::to_string(k));
  }
  note(o, pairs > 0, "no complex-conjugate pairs generated");
  if (o.pass)
    o.detail = std::to_string(compared) + " compared (" + std::to_string(dominated) + " dominated, " +
               std::to_string(pairs) + " with conjugate pairs), 0 disagreements";
  return o;
}

Outcome criterion8() {
  Outcome o;
  Rng rng(8);
  int compared = 0;
  for (int k = 0; k < 50; ++k) {
    const Field f = k % 2 ? Field::Real : Field::Complex;
    const LyapunovProblem p = testing::random_problem(rng, {f, 8, 3, true, 20.0}, testing::kind_for(k));
    const Mat P2 = testing::random_invertible(rng, p.n(), f, 20.0);
    const LyapunovProblem q(p.spec().with_similarity(P2), p.b());
    const DominationReport a = check_domination(p, 0, 0), b = check_domination(q, 0, 0);
    const bool marginal = a.verdict == Verdict::Marginal || b.verdict == Verdict::Marginal;
    if (!marginal) {
      ++compared;
      note(o, a.verdict == b.verdict, "verdict changed on problem " + std::to_string(k));
      note(o, choi_psd(lyapunov_order_map(p)) == choi_psd(lyapunov_order_map(q)),
           "Choi verdict changed on problem " + std::to_string(k));
    }
  }
  if (o.pass) o.detail = std::to_string(compared) + "/50 non-marginal cases unchanged";
  return o;
}

Outcome criterion9() {
  Outcome o;
  // Scalar: multiplication by (1 - |t|^2) / (1 - |lambda|^2).
  Rng rng(9);
  for (int k = 0; k < 20; ++k) {
    const Complex lambda = std::polar(k % 2 ? rng.uniform(0.1, 0.8) : rng.uniform(1.3, 3.0), rng.uniform(0, 6.28));
    const Complex t = std::polar(rng.uniform(0.0, 3.0), rng.uniform(0, 6.28));
    const SteinProblem p(JordanSpec(Field::Complex, {{lambda, {1}}}), BicommElement{{{t}}});
    const DominationReport r = stein_domination(p, 0, 0);
    const double expected = (1 - std::norm(t)) / (1 - std::norm(lambda));
    note(o, std::abs(r.hill_pick.H(0, 0) - expected) <= kPickTol * (1 + std::abs(expected)),
         "scalar Stein value mismatch");
    note(o, r.verdict == (expected >= 0 ? Verdict::Dominates : Verdict::NotDominates), "scalar Stein verdict");
  }
  int stein_problems = 0, dominated = 0;
  for (int k = 0; stein_problems < 20 && k < 1000; ++k) {
    const JordanSpec spec = testing::random_spec(rng, {k % 2 ? Field::Real : Field::Complex, 6, 3, true, 10.0});
    bool regular = true;
    for (Complex a : spec.eigenvalues())
      for (Complex b : spec.eigenvalues()) regular = regular && std::abs(a * std::conj(b) - 1.0) >= 0.2;
    if (!regular) continue;
    ++stein_problems;
    const SteinProblem same(spec, bicomm_of_A(spec));
    note(o, stein_domination(same, 0, 0).verdict == Verdict::Dominates, "B = A does not dominate (Stein)");
    const SteinProblem p(spec, testing::random_bicomm(rng, spec, testing::kind_for(k)));
    const DominationReport r = stein_domination(p, 0, 0);
    if (r.verdict == Verdict::Dominates) {
      ++dominated;
      note(o, stein_oracle(p, kOracleTrials, k).consistent, "Stein oracle violation on dominated problem");
    }
  }
  note(o, stein_problems == 20, "could not generate 20 Stein-regular problems");
  const SteinProblem bad(JordanSpec(Field::Complex, {{0.5, {1}}}), BicommElement{{{2.0}}});
  note(o, !stein_oracle(bad, kOracleTrials, 0).consistent, "no Stein violation found for lambda = 1/2, t = 2");
  if (o.pass)
    o.detail = "20 scalar cases; " + std::to_string(stein_problems) + " random problems, B = A dominates, " +
               std::to_string(dominated) + " dominated consistent over " + std::to_string(kOracleTrials) + " samples";
  return o;
}

}  // namespace

int main() {
  const std::vector<LyapunovProblem> probs = complex_problems();
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"closed-form order map", [&] { return criterion1(probs); }},
      {"Hill-Pick vs Choi (complex)", [&] { return criterion2(probs); }},
      {"oracle consistency", [&] { return criterion3(probs); }},
      {"Pick reduction", [] { return criterion4(); }},
      {"Hill representation suite", [] { return criterion5(); }},
      {"witness machinery", [] { return criterion6(); }},
      {"real-field cross-check", [] { return criterion7(); }},
      {"similarity invariance", [] { return criterion8(); }},
      {"Stein pipeline", [] { return criterion9(); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %zu %-30s %s  %s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL",
                o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
