#pragma once

#include <complex>
#include <initializer_list>
#include <string_view>

#include <Eigen/Dense>

namespace lyap {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using CMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class Field { Real, Complex };

constexpr Field join(Field a, Field b) {
  return (a == Field::Real && b == Field::Real) ? Field::Real : Field::Complex;
}

std::string_view to_string(Field field);

/**
 * Dense matrix of complex entries with a field tag.
 *
 * A Real tag guarantees every stored imaginary part is exactly zero. Results
 * of arithmetic carry the joined field of their operands.
 */
class Mat {
 public:
  Mat() = default;
  Mat(Index rows, Index cols, Field field = Field::Complex);
  /// Throws PreconditionError if field is Real and some imaginary part is not 0.
  explicit Mat(CMatrix entries, Field field = Field::Complex);

  /// Wraps a computed result; a Real tag drops the imaginary parts.
  static Mat computed(CMatrix entries, Field field);
  static Mat zeros(Index rows, Index cols, Field field = Field::Real);
  static Mat identity(Index n, Field field = Field::Real);
  /// Matrix unit with a single 1 at (i, j), 0-based.
  static Mat unit(Index rows, Index cols, Index i, Index j);
  static Mat basis_vector(Index n, Index i);
  static Mat from_rows(std::initializer_list<std::initializer_list<Complex>> rows,
                       Field field = Field::Complex);
  static Mat real(std::initializer_list<std::initializer_list<double>> rows);
  static Mat real(const Eigen::MatrixXd& entries);

  Index rows() const { return m_.rows(); }
  Index cols() const { return m_.cols(); }
  Field field() const { return field_; }
  bool is_real() const { return field_ == Field::Real; }
  bool is_square() const { return m_.rows() == m_.cols(); }
  const CMatrix& entries() const { return m_; }

  Complex operator()(Index i, Index j) const { return m_(i, j); }
  void set(Index i, Index j, Complex value);

  Mat adjoint() const;
  Mat transpose() const;
  Mat conjugate() const;
  Mat with_field(Field field) const;
  double norm() const;

  Mat operator-() const;
  Mat& operator+=(const Mat& other);
  Mat& operator-=(const Mat& other);

  friend Mat operator+(const Mat& a, const Mat& b);
  friend Mat operator-(const Mat& a, const Mat& b);
  friend Mat operator*(const Mat& a, const Mat& b);
  friend Mat operator*(Complex s, const Mat& a);
  friend Mat operator*(const Mat& a, Complex s) { return s * a; }
  friend bool operator==(const Mat& a, const Mat& b);

 private:
  CMatrix m_;
  Field field_ = Field::Complex;
};

}  // namespace lyap
