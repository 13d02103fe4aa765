#include "lyap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lyap/errors.hpp"

namespace lyap {

namespace {

using DenseC = Eigen::MatrixXcd;

void check_finite(const CMatrix& m, const char* what) {
  if (!m.allFinite()) throw NumericalError(std::string(what) + ": non-finite input");
}

Eigen::JacobiSVD<DenseC> svd_of(const Mat& m, int options) {
  check_finite(m.entries(), "svd");
  DenseC d = m.entries();
  Eigen::JacobiSVD<DenseC> svd(d, options);
  if (!svd.singularValues().allFinite()) throw NumericalError("svd breakdown");
  return svd;
}

}  // namespace

Mat vec(const Mat& m) {
  CMatrix out(m.rows() * m.cols(), 1);
  for (Index k = 0; k < m.cols(); ++k)
    for (Index l = 0; l < m.rows(); ++l) out(k * m.rows() + l, 0) = m(l, k);
  return Mat::computed(std::move(out), m.field());
}

Mat unvec(const Mat& v, Index rows, Index cols) {
  if (v.cols() != 1 || v.rows() != rows * cols)
    throw ShapeError("unvec: vector length does not match target shape");
  CMatrix out(rows, cols);
  for (Index k = 0; k < cols; ++k)
    for (Index l = 0; l < rows; ++l) out(l, k) = v(k * rows + l, 0);
  return Mat::computed(std::move(out), v.field());
}

Mat kron(const Mat& a, const Mat& b) {
  const CMatrix& x = a.entries();
  const CMatrix& y = b.entries();
  CMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Index i = 0; i < x.rows(); ++i)
    for (Index j = 0; j < x.cols(); ++j)
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
  return Mat::computed(std::move(out), join(a.field(), b.field()));
}

Mat hadamard(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError("hadamard: shape mismatch");
  return Mat::computed(a.entries().cwiseProduct(b.entries()),
                       join(a.field(), b.field()));
}

Mat canonical_shuffle(Index m, Index n) {
  Mat s(m * n, n * m, Field::Real);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j) s.set(i * n + j, j * m + i, 1.0);
  return s;
}

std::vector<double> singular_values(const Mat& m) {
  if (m.rows() == 0 || m.cols() == 0) return {};
  const auto sv = svd_of(m, 0).singularValues();
  return {sv.data(), sv.data() + sv.size()};
}

std::size_t rank_tol(const Mat& m, const Tolerances& tol) {
  const auto sv = singular_values(m);
  if (sv.empty() || sv.front() == 0.0) return 0;
  const double cut = tol.rank_rel * sv.front();
  return static_cast<std::size_t>(
      std::count_if(sv.begin(), sv.end(), [cut](double s) { return s > cut; }));
}

std::string_view to_string(Psd p) {
  switch (p) {
    case Psd::Yes:
      return "yes";
    case Psd::No:
      return "no";
    case Psd::Marginal:
      return "marginal";
  }
  return "?";
}

bool is_hermitian(const Mat& m, const Tolerances& tol) {
  if (!m.is_square()) return false;
  const CMatrix& e = m.entries();
  return (e - e.adjoint()).norm() <= tol.eq_rel * (1.0 + e.norm());
}

std::vector<double> hermitian_eigenvalues(const Mat& m) {
  if (!m.is_square()) throw ShapeError("eigenvalues of a non-square matrix");
  if (m.rows() == 0) return {};
  check_finite(m.entries(), "eigenvalues");
  DenseC hs = 0.5 * (m.entries() + m.entries().adjoint());
  Eigen::SelfAdjointEigenSolver<DenseC> es(hs, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed");
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double spectral_norm(const Mat& m) {
  const auto sv = singular_values(m);
  return sv.empty() ? 0.0 : sv.front();
}

PsdReport is_psd(const Mat& m, const Tolerances& tol) {
  if (!m.is_square()) throw ShapeError("is_psd: matrix is not square");
  if (!is_hermitian(m, tol))
    throw PreconditionError("is_psd: matrix is not Hermitian within tolerance");
  PsdReport r;
  if (m.rows() == 0) return r;
  const auto ev = hermitian_eigenvalues(m);
  const double norm2 = std::max(std::abs(ev.front()), std::abs(ev.back()));
  r.min_eig = ev.front();
  r.band = tol.psd_rel * (1.0 + norm2);
  if (r.min_eig < -r.band)
    r.verdict = Psd::No;
  else if (r.min_eig < -r.band * kMarginalFraction)
    r.verdict = Psd::Marginal;
  else
    r.verdict = Psd::Yes;
  return r;
}

double relative_difference(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError("relative_difference: shape mismatch");
  return (a.entries() - b.entries()).norm() / (1.0 + a.entries().norm());
}

Mat inverse(const Mat& m, const Tolerances& tol) {
  if (!m.is_square()) throw ShapeError("inverse of a non-square matrix");
  if (rank_tol(m, tol) < static_cast<std::size_t>(m.rows()))
    throw PreconditionError("matrix is singular within tolerance");
  DenseC d = m.entries();
  DenseC inv = d.partialPivLu().inverse();
  return Mat::computed(inv, m.field());
}

Mat null_space(const Mat& m, const Tolerances& tol) {
  const Index c = m.cols();
  if (c == 0) return Mat(0, 0, m.field());
  if (m.rows() == 0) return Mat::identity(c, m.field());
  auto svd = svd_of(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = sv.size() ? tol.rank_rel * sv(0) : 0.0;
  Index r = 0;
  while (r < sv.size() && sv(r) > cut && sv(0) > 0.0) ++r;
  DenseC basis = svd.matrixV().rightCols(c - r);
  return Mat::computed(basis, Field::Complex);
}

double max_principal_angle_sine(const Mat& basis_a, const Mat& basis_b) {
  if (basis_a.rows() != basis_b.rows())
    throw ShapeError("principal angles: ambient dimensions differ");
  if (basis_a.cols() != basis_b.cols()) return 1.0;
  if (basis_a.cols() == 0) return 0.0;
  const CMatrix& qa = basis_a.entries();
  const CMatrix& qb = basis_b.entries();
  const CMatrix residual = qa - qb * (qb.adjoint() * qa);
  return spectral_norm(Mat::computed(residual, Field::Complex));
}

}  // namespace lyap
