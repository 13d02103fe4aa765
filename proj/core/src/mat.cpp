#include "lyap/mat.hpp"

#include <cmath>
#include <sstream>

#include "lyap/errors.hpp"
#include "lyap/tolerances.hpp"

namespace lyap {

namespace {

bool all_real(const CMatrix& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (m(i, j).imag() != 0.0) return false;
  return true;
}

void require_same_shape(const Mat& a, const Mat& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << op << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs "
       << b.rows() << "x" << b.cols();
    throw ShapeError(os.str());
  }
}

}  // namespace

std::string_view to_string(Field field) {
  return field == Field::Real ? "real" : "complex";
}

void Tolerances::validate() const {
  for (double t : {rank_rel, psd_rel, eq_rel})
    if (!std::isfinite(t) || t <= 0.0)
      throw PreconditionError("tolerances must be finite and positive");
}

Mat::Mat(Index rows, Index cols, Field field)
    : m_(CMatrix::Zero(rows, cols)), field_(field) {
  if (rows < 0 || cols < 0) throw ShapeError("negative matrix dimension");
}

Mat::Mat(CMatrix entries, Field field) : m_(std::move(entries)), field_(field) {
  if (field_ == Field::Real && !all_real(m_))
    throw PreconditionError("real-tagged matrix has a nonzero imaginary part");
}

Mat Mat::computed(CMatrix entries, Field field) {
  if (field == Field::Real) entries = entries.real().cast<Complex>();
  Mat out;
  out.m_ = std::move(entries);
  out.field_ = field;
  return out;
}

Mat Mat::zeros(Index rows, Index cols, Field field) { return Mat(rows, cols, field); }

Mat Mat::identity(Index n, Field field) {
  return Mat(CMatrix::Identity(n, n), field);
}

Mat Mat::unit(Index rows, Index cols, Index i, Index j) {
  Mat out(rows, cols, Field::Real);
  out.m_(i, j) = 1.0;
  return out;
}

Mat Mat::basis_vector(Index n, Index i) { return unit(n, 1, i, 0); }

Mat Mat::from_rows(std::initializer_list<std::initializer_list<Complex>> rows,
                   Field field) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  CMatrix m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != c) throw ShapeError("ragged rows");
    Index j = 0;
    for (const Complex& v : row) m(i, j++) = v;
    ++i;
  }
  return Mat(std::move(m), field);
}

Mat Mat::real(std::initializer_list<std::initializer_list<double>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  CMatrix m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != c) throw ShapeError("ragged rows");
    Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return Mat(std::move(m), Field::Real);
}

Mat Mat::real(const Eigen::MatrixXd& entries) {
  return Mat(entries.cast<Complex>(), Field::Real);
}

void Mat::set(Index i, Index j, Complex value) {
  if (field_ == Field::Real && value.imag() != 0.0)
    throw PreconditionError("complex value written into a real-tagged matrix");
  m_(i, j) = value;
}

Mat Mat::adjoint() const { return computed(m_.adjoint(), field_); }
Mat Mat::transpose() const { return computed(m_.transpose(), field_); }
Mat Mat::conjugate() const { return computed(m_.conjugate(), field_); }

Mat Mat::with_field(Field field) const {
  if (field == field_) return *this;
  return Mat(m_, field);
}

double Mat::norm() const { return m_.norm(); }

Mat Mat::operator-() const { return computed(-m_, field_); }

Mat& Mat::operator+=(const Mat& other) { return *this = *this + other; }
Mat& Mat::operator-=(const Mat& other) { return *this = *this - other; }

Mat operator+(const Mat& a, const Mat& b) {
  require_same_shape(a, b, "add");
  return Mat::computed(a.m_ + b.m_, join(a.field_, b.field_));
}

Mat operator-(const Mat& a, const Mat& b) {
  require_same_shape(a, b, "subtract");
  return Mat::computed(a.m_ - b.m_, join(a.field_, b.field_));
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) {
    std::ostringstream os;
    os << "multiply: inner dimensions " << a.cols() << " vs " << b.rows();
    throw ShapeError(os.str());
  }
  return Mat::computed(a.m_ * b.m_, join(a.field_, b.field_));
}

Mat operator*(Complex s, const Mat& a) {
  const Field f = s.imag() == 0.0 ? a.field_ : Field::Complex;
  return Mat::computed(s * a.m_, f);
}

bool operator==(const Mat& a, const Mat& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a.m_ == b.m_;
}

}  // namespace lyap
