#include <gtest/gtest.h>

#include <algorithm>

#include "lyap/errors.hpp"
#include "lyap/jordan.hpp"
#include "lyap/lyapunov_order.hpp"
#include "test_support.hpp"

namespace lyap {
namespace {

JordanSpec complex_spec(std::vector<EigenBlock> e) { return JordanSpec(Field::Complex, std::move(e)); }

TEST(JordanSpec, Validation) {
  EXPECT_THROW(complex_spec({{1.0, {}}}), PreconditionError);
  EXPECT_THROW(complex_spec({{1.0, {1, 2}}}), PreconditionError);
  EXPECT_THROW(complex_spec({{1.0, {1}}, {1.0, {2}}}), PreconditionError);
  EXPECT_THROW(complex_spec({{1.0, {31}}}), PreconditionError);
  EXPECT_THROW(JordanSpec(Field::Real, {{Complex(1, -1), {1}}}), PreconditionError);
  EXPECT_THROW(JordanSpec(Field::Complex, {{1.0, {1}}, {2.0, {1}}},
                          Mat::real({{1, 1}, {1, 1}})),
               PreconditionError);
  EXPECT_THROW(JordanSpec(Field::Real, {{1.0, {1}}}, Mat::from_rows({{Complex(0, 1)}})),
               PreconditionError);
}

TEST(JordanSpec, SizesAndOffsets) {
  const JordanSpec s(Field::Real, {{Complex(1, 1), {2, 1}}, {3.0, {2}}});
  EXPECT_EQ(s.n(), 8);
  EXPECT_EQ(s.group_offset(1), 6);
  ASSERT_EQ(s.blocks().size(), 3u);
  EXPECT_EQ(s.blocks()[1].offset, 4);
  EXPECT_EQ(s.blocks()[1].dim(), 2);
}

TEST(BuildJA, Examples) {
  EXPECT_EQ(build_JA(complex_spec({{5.0, {1}}})), Mat::real({{5}}).with_field(Field::Complex));
  EXPECT_EQ(build_JA(complex_spec({{2.0, {2}}})), Mat::real({{2, 1}, {0, 2}}).with_field(Field::Complex));
  EXPECT_EQ(build_JA(JordanSpec(Field::Real, {{Complex(0, 1), {1}}})), Mat::real({{0, 1}, {-1, 0}}));
}

TEST(BuildJA, RealPairBlockStructure) {
  // J_2(C) = I kron C + S kron I_2
  const JordanSpec s(Field::Real, {{Complex(2, 3), {2}}});
  const Mat C = Mat::real({{2, 3}, {-3, 2}});
  const Mat S = Mat::real({{0, 1}, {0, 0}});
  EXPECT_EQ(build_JA(s), kron(Mat::identity(2), C) + kron(S, Mat::identity(2)));
}

TEST(BuildA, Conjugation) {
  const JordanSpec s(Field::Complex, {{1.0, {1}}, {2.0, {1}}}, Mat::real({{1, 1}, {0, 1}}));
  EXPECT_LT(relative_difference(build_A(s), Mat::real({{1, 1}, {0, 2}})), 1e-15);
  const JordanSpec id(Field::Complex, {{1.0, {1}}, {2.0, {1}}});
  EXPECT_EQ(build_A(id), build_JA(id));
}

TEST(BuildA, EigenvaluesRoundTrip) {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const JordanSpec s = testing::random_spec(rng, {Field::Complex, 6, 3, true, 20.0});
    Eigen::MatrixXcd a = build_A(s).entries();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a);
    std::vector<Complex> got(es.eigenvalues().data(), es.eigenvalues().data() + a.rows());
    std::vector<Complex> want = s.eigenvalues();
    // Defective eigenvalues are perturbed at the eps^(1/size) scale.
    for (const Complex& w : want) {
      auto it = std::min_element(got.begin(), got.end(), [&](Complex x, Complex y) {
        return std::abs(x - w) < std::abs(y - w);
      });
      EXPECT_LT(std::abs(*it - w), 1e-3);
      got.erase(it);
    }
  }
}

TEST(LyapunovRegular, Examples) {
  EXPECT_TRUE(is_lyapunov_regular(complex_spec({{1.0, {1}}, {2.0, {1}}})));
  EXPECT_FALSE(is_lyapunov_regular(complex_spec({{Complex(0, 1), {1}}})));
  EXPECT_FALSE(is_lyapunov_regular(complex_spec({{1.0, {1}}, {-1.0, {1}}})));
  EXPECT_FALSE(is_lyapunov_regular(JordanSpec(Field::Real, {{Complex(0, 2), {1}}})));
  // 1+i and -1+i: (1+i) + conj(-1+i) = 0
  EXPECT_FALSE(is_lyapunov_regular(complex_spec({{Complex(1, 1), {1}}, {Complex(-1, 1), {1}}})));
  EXPECT_TRUE(is_lyapunov_regular(complex_spec({{Complex(1, 1), {1}}, {Complex(-1, -1), {1}}})));
}

TEST(LyapunovRegular, MatchesInvertibilityOfOperator) {
  const Tolerances tol;
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const JordanSpec s = testing::random_spec(rng, {Field::Complex, 5, 3, true, 20.0});
    const Index n = s.n();
    EXPECT_EQ(is_lyapunov_regular(s),
              rank_tol(lyapunov_matricization(build_A(s)).L(), tol) == std::size_t(n * n));
  }
  const JordanSpec bad(Field::Complex, {{1.0, {2}}, {-1.0, {1}}});
  EXPECT_FALSE(is_lyapunov_regular(bad));
  EXPECT_LT(rank_tol(lyapunov_matricization(build_A(bad)).L(), tol), 9u);
}

TEST(Bicomm, IdentityAndA) {
  const JordanSpec s(Field::Complex, {{2.0, {2, 1}}, {Complex(1, 1), {1}}});
  EXPECT_EQ(build_bicomm_element(s, bicomm_identity(s)), Mat::identity(4).with_field(Field::Complex));
  EXPECT_EQ(build_bicomm_element(s, bicomm_of_A(s)), build_A(s));
}

TEST(Bicomm, RepeatedToeplitzAssembly) {
  const Mat P = Mat::real({{1, 2, 0}, {0, 1, 0}, {1, 0, 1}});
  const JordanSpec s(Field::Complex, {{2.0, {2, 1}}}, P);
  const BicommElement b{{{4.0, 7.0}}};
  const Mat tilde = Mat::real({{4, 7, 0}, {0, 4, 0}, {0, 0, 4}});
  EXPECT_EQ(build_bicomm_tilde(s, b), tilde.with_field(Field::Complex));
  const Mat B = build_bicomm_element(s, b);
  const Mat A = build_A(s);
  EXPECT_LT((A * B - B * A).norm(), 1e-12);
  EXPECT_LT(relative_difference(B, P * tilde * inverse(P, {})), 1e-14);
}

TEST(Bicomm, ShapeMismatch) {
  const JordanSpec s(Field::Complex, {{2.0, {2}}});
  EXPECT_THROW(build_bicomm_element(s, BicommElement{{{1.0}}}), ShapeError);
  EXPECT_THROW(build_bicomm_element(s, BicommElement{{{1.0, 0.0}, {1.0}}}), ShapeError);
  const JordanSpec r(Field::Real, {{2.0, {1}}});
  EXPECT_THROW(build_bicomm_element(r, BicommElement{{{Complex(1, 1)}}}), PreconditionError);
}

TEST(Bicomm, CommutesWithA) {
  Rng rng(13);
  for (Field f : {Field::Complex, Field::Real})
    for (int trial = 0; trial < 30; ++trial) {
      const JordanSpec s = testing::random_spec(rng, {f, 8, 3, true, 20.0});
      const Mat A = build_A(s);
      const Mat B = build_bicomm_element(s, testing::random_bicomm(rng, s, testing::BKind::Random));
      EXPECT_LE((A * B - B * A).norm(), 1e-10 * A.norm() * B.norm());
    }
}

TEST(Membership, AcceptsConstructedAndPolynomials) {
  Rng rng(14);
  const Tolerances tol;
  for (Field f : {Field::Complex, Field::Real})
    for (int trial = 0; trial < 30; ++trial) {
      const JordanSpec s = testing::random_spec(rng, {f, 8, 3, true, 20.0});
      const Mat B = build_bicomm_element(s, testing::random_bicomm(rng, s, testing::BKind::Random));
      EXPECT_TRUE(check_bicomm_membership(s, B, tol).member);
      // p(A) with real coefficients, degree <= n
      const Mat A = build_A(s);
      Mat p = Mat::zeros(s.n(), s.n(), f);
      Mat power = Mat::identity(s.n(), f);
      for (Index d = 0; d <= s.n(); ++d) {
        p += rng.normal() * power;
        power = power * A;
      }
      EXPECT_TRUE(check_bicomm_membership(s, p, Tolerances{1e-9, 1e-9, 1e-8}).member);
    }
}

TEST(Membership, SquareOfA) {
  const JordanSpec s(Field::Complex, {{2.0, {3, 1}}, {-1.0, {2}}}, Mat::identity(6));
  const Mat A = build_A(s);
  EXPECT_TRUE(check_bicomm_membership(s, A * A, {}).member);
}

TEST(Membership, RejectsOffDiagonal) {
  const JordanSpec s(Field::Complex, {{1.0, {1}}, {2.0, {1}}});
  const Membership m = check_bicomm_membership(s, Mat::real({{1, 1}, {0, 1}}), {});
  EXPECT_FALSE(m.member);
  ASSERT_TRUE(m.witness.has_value());
  EXPECT_EQ(m.witness->first, 0);
  EXPECT_EQ(m.witness->second, 1);
}

TEST(Membership, EnforcesSharedCoefficientsAcrossBlocks) {
  // Toeplitz in each block but with different diagonals: commutes with J, not in {J}''.
  const JordanSpec s(Field::Complex, {{0.5, {2, 1}}});
  const Mat B = Mat::real({{1, 2, 0}, {0, 1, 0}, {0, 0, 3}});
  const Mat J = build_JA(s);
  EXPECT_LT((J * B - B * J).norm(), 1e-15);
  EXPECT_FALSE(check_bicomm_membership(s, B, {}).member);
}

TEST(Membership, RealFieldRejectsComplexEntries) {
  const JordanSpec s(Field::Real, {{1.0, {1}}});
  EXPECT_FALSE(check_bicomm_membership(s, Mat::from_rows({{Complex(1, 1)}}), {}).member);
}

TEST(Membership, RealPairPattern) {
  const JordanSpec s(Field::Real, {{Complex(1, 1), {1}}});
  EXPECT_TRUE(check_bicomm_membership(s, Mat::real({{2, 5}, {-5, 2}}), {}).member);
  EXPECT_FALSE(check_bicomm_membership(s, Mat::real({{2, 5}, {5, 2}}), {}).member);
}

TEST(Extract, Examples) {
  const Tolerances tol;
  const JordanSpec s(Field::Complex, {{2.0, {2, 1}}, {Complex(1, 1), {1}}},
                     Mat::real({{1, 0, 0, 1}, {0, 2, 0, 0}, {1, 0, 1, 0}, {0, 0, 0, 1}}));
  const BicommElement id = extract_bicomm_coeffs(s, Mat::identity(4), tol);
  EXPECT_NEAR(std::abs(id.coeffs[0][0] - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(id.coeffs[0][1]), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(id.coeffs[1][0] - 1.0), 0.0, 1e-14);
  const BicommElement a = extract_bicomm_coeffs(s, build_A(s), tol);
  EXPECT_NEAR(std::abs(a.coeffs[0][0] - 2.0), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(a.coeffs[0][1] - 1.0), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(a.coeffs[1][0] - Complex(1, 1)), 0.0, 1e-13);
  EXPECT_THROW(extract_bicomm_coeffs(s, Mat::unit(4, 4, 0, 3), tol), PreconditionError);
}

TEST(Extract, RoundTrip) {
  Rng rng(15);
  const Tolerances tol;
  for (Field f : {Field::Complex, Field::Real})
    for (int trial = 0; trial < 30; ++trial) {
      const JordanSpec s = testing::random_spec(rng, {f, 8, 3, true, 20.0});
      const BicommElement b = testing::random_bicomm(rng, s, testing::BKind::Random);
      const BicommElement back = extract_bicomm_coeffs(s, build_bicomm_element(s, b), tol);
      for (std::size_t j = 0; j < b.coeffs.size(); ++j)
        for (std::size_t i = 0; i < b.coeffs[j].size(); ++i)
          EXPECT_LT(std::abs(back.coeffs[j][i] - b.coeffs[j][i]), 1e-9 * (1 + std::abs(b.coeffs[j][i])));
      EXPECT_LT(relative_difference(build_bicomm_element(s, back), build_bicomm_element(s, b)), 1e-9);
    }
}

TEST(Taylor, InverseCoefficientsGiveInverse) {
  const JordanSpec s(Field::Real, {{Complex(1, 2), {2}}, {3.0, {2, 1}}},
                     Mat::real({{1, 0, 0, 0, 0, 0, 1}, {0, 1, 0, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0, 0},
                                {0, 0, 0, 1, 0, 0, 0}, {0, 1, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 0, 1, 0},
                                {0, 0, 0, 0, 0, 0, 1}}));
  const Mat inv = build_bicomm_element(s, bicomm_shifted_inverse(s, 0.0));
  EXPECT_LT(relative_difference(Mat::identity(7), inv * build_A(s)), 1e-13);
  EXPECT_EQ(inv.field(), Field::Real);
}

}  // namespace
}  // namespace lyap
