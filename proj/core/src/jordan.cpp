#include "lyap/jordan.hpp"

#include <cmath>
#include <sstream>

#include "lyap/errors.hpp"
#include "lyap/linalg.hpp"

namespace lyap {

namespace {

// Real 2x2 representation [[a, b], [-b, a]] of a + ib.
void put_complex_block(CMatrix& m, Index r, Index c, Complex t) {
  m(r, c) = t.real();
  m(r, c + 1) = t.imag();
  m(r + 1, c) = -t.imag();
  m(r + 1, c + 1) = t.real();
}

// Repeated Toeplitz assembly without field validation.
CMatrix assemble_tilde(const JordanSpec& spec,
                       const std::vector<std::vector<Complex>>& coeffs) {
  CMatrix m = CMatrix::Zero(spec.n(), spec.n());
  for (const JordanBlock& blk : spec.blocks()) {
    const auto& t = coeffs[blk.eigen];
    for (int r = 0; r < blk.size; ++r) {
      for (int c = r; c < blk.size; ++c) {
        const Complex v = t[c - r];
        if (blk.unit == 1)
          m(blk.offset + r, blk.offset + c) = v;
        else
          put_complex_block(m, blk.offset + 2 * r, blk.offset + 2 * c, v);
      }
    }
  }
  return m;
}

CMatrix to_jordan_coordinates(const JordanSpec& spec, const Mat& B) {
  if (!spec.has_similarity()) return B.entries();
  return spec.P_inverse().entries() * B.entries() * spec.P().entries();
}

std::vector<std::vector<Complex>> read_coeffs(const JordanSpec& spec,
                                              const CMatrix& bt) {
  std::vector<std::vector<Complex>> coeffs(spec.eigens().size());
  for (std::size_t j = 0; j < spec.eigens().size(); ++j) {
    const Index o = spec.group_offset(j);
    const int len = spec.leading_size(j);
    auto& t = coeffs[j];
    t.resize(len);
    for (int v = 0; v < len; ++v) {
      if (spec.unit(j) == 1)
        t[v] = bt(o, o + v);
      else
        t[v] = Complex(bt(o, o + 2 * v).real(), bt(o, o + 2 * v + 1).real());
    }
  }
  return coeffs;
}

}  // namespace

JordanSpec::JordanSpec(Field field, std::vector<EigenBlock> eigens,
                       std::optional<Mat> similarity, const Tolerances& tol)
    : field_(field), eigens_(std::move(eigens)) {
  tol.validate();
  if (eigens_.empty()) throw PreconditionError("Jordan data has no eigenvalues");
  for (std::size_t j = 0; j < eigens_.size(); ++j) {
    const auto& e = eigens_[j];
    if (e.sizes.empty())
      throw PreconditionError("eigenvalue without Jordan block sizes");
    for (std::size_t q = 0; q < e.sizes.size(); ++q) {
      if (e.sizes[q] <= 0) throw PreconditionError("Jordan block size must be positive");
      if (e.sizes[q] > kMaxBlockSize)
        throw PreconditionError("Jordan block size exceeds 30");
      if (q > 0 && e.sizes[q] > e.sizes[q - 1])
        throw PreconditionError("Jordan block sizes must be nonincreasing");
    }
    if (!std::isfinite(e.lambda.real()) || !std::isfinite(e.lambda.imag()))
      throw PreconditionError("eigenvalue is not finite");
    if (field_ == Field::Real && e.lambda.imag() < 0.0)
      throw PreconditionError(
          "over the reals list complex eigenvalues with positive imaginary part");
    for (std::size_t k = 0; k < j; ++k)
      if (eigens_[k].lambda == e.lambda)
        throw PreconditionError("eigenvalues must be pairwise distinct");
  }

  Index offset = 0;
  for (std::size_t j = 0; j < eigens_.size(); ++j) {
    group_offset_.push_back(offset);
    const int u = unit(j);
    for (std::size_t q = 0; q < eigens_[j].sizes.size(); ++q) {
      JordanBlock b{j, q, offset, eigens_[j].sizes[q], u};
      blocks_.push_back(b);
      offset += b.dim();
    }
    group_dim_.push_back(offset - group_offset_.back());
  }
  n_ = offset;

  if (similarity) {
    Mat p = *similarity;
    if (p.rows() != n_ || p.cols() != n_) throw ShapeError("P must be n x n");
    if (field_ == Field::Real) p = p.with_field(Field::Real);
    p_inv_ = inverse(p, tol);
    p_ = std::move(p);
    has_p_ = true;
  } else {
    p_ = Mat::identity(n_, field_);
    p_inv_ = p_;
  }
}

int JordanSpec::unit(std::size_t eigen) const {
  return field_ == Field::Real && eigens_[eigen].lambda.imag() > 0.0 ? 2 : 1;
}

std::vector<Complex> JordanSpec::eigenvalues() const {
  std::vector<Complex> out;
  for (const JordanBlock& b : blocks_) {
    const Complex l = eigens_[b.eigen].lambda;
    for (int i = 0; i < b.size; ++i) {
      out.push_back(l);
      if (b.unit == 2) out.push_back(std::conj(l));
    }
  }
  return out;
}

JordanSpec JordanSpec::with_similarity(std::optional<Mat> similarity,
                                       const Tolerances& tol) const {
  return JordanSpec(field_, eigens_, std::move(similarity), tol);
}

Mat build_JA(const JordanSpec& spec) {
  CMatrix j = CMatrix::Zero(spec.n(), spec.n());
  for (const JordanBlock& b : spec.blocks()) {
    const Complex l = spec.eigens()[b.eigen].lambda;
    for (int r = 0; r < b.size; ++r) {
      if (b.unit == 1) {
        j(b.offset + r, b.offset + r) = l;
        if (r + 1 < b.size) j(b.offset + r, b.offset + r + 1) = 1.0;
      } else {
        const Index d = b.offset + 2 * r;
        put_complex_block(j, d, d, l);
        if (r + 1 < b.size) {
          j(d, d + 2) = 1.0;
          j(d + 1, d + 3) = 1.0;
        }
      }
    }
  }
  return Mat(std::move(j), spec.field());
}

Mat build_A(const JordanSpec& spec) {
  const Mat j = build_JA(spec);
  if (!spec.has_similarity()) return j;
  return (spec.P() * j * spec.P_inverse()).with_field(spec.field());
}

bool is_lyapunov_regular(const JordanSpec& spec, const Tolerances& tol) {
  std::vector<Complex> ev;
  for (const auto& e : spec.eigens()) {
    ev.push_back(e.lambda);
    if (spec.field() == Field::Real && e.lambda.imag() > 0.0)
      ev.push_back(std::conj(e.lambda));
  }
  for (const Complex& a : ev)
    for (const Complex& b : ev)
      if (std::abs(a + std::conj(b)) <= tol.eq_rel * (std::abs(a) + std::abs(b)))
        return false;
  return true;
}

bool is_stein_regular(const JordanSpec& spec, const Tolerances& tol) {
  std::vector<Complex> ev;
  for (const auto& e : spec.eigens()) {
    ev.push_back(e.lambda);
    if (spec.field() == Field::Real && e.lambda.imag() > 0.0)
      ev.push_back(std::conj(e.lambda));
  }
  for (const Complex& a : ev)
    for (const Complex& b : ev)
      if (std::abs(a * std::conj(b) - 1.0) <=
          tol.eq_rel * (1.0 + std::abs(a) * std::abs(b)))
        return false;
  return true;
}

void validate_bicomm(const JordanSpec& spec, const BicommElement& b) {
  if (b.coeffs.size() != spec.eigens().size())
    throw ShapeError("need one coefficient list per eigenvalue");
  for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
    if (static_cast<int>(b.coeffs[j].size()) != spec.leading_size(j)) {
      std::ostringstream os;
      os << "eigenvalue " << j << ": expected " << spec.leading_size(j)
         << " coefficients, got " << b.coeffs[j].size();
      throw ShapeError(os.str());
    }
    for (const Complex& t : b.coeffs[j]) {
      if (!std::isfinite(t.real()) || !std::isfinite(t.imag()))
        throw PreconditionError("coefficient is not finite");
      if (spec.field() == Field::Real && spec.unit(j) == 1 && t.imag() != 0.0)
        throw PreconditionError(
            "real eigenvalue over the reals needs real coefficients");
    }
  }
}

Mat build_bicomm_tilde(const JordanSpec& spec, const BicommElement& b) {
  validate_bicomm(spec, b);
  return Mat::computed(assemble_tilde(spec, b.coeffs), spec.field());
}

Mat build_bicomm_element(const JordanSpec& spec, const BicommElement& b) {
  const Mat t = build_bicomm_tilde(spec, b);
  if (!spec.has_similarity()) return t;
  return (spec.P() * t * spec.P_inverse()).with_field(spec.field());
}

Membership check_bicomm_membership(const JordanSpec& spec, const Mat& B,
                                   const Tolerances& tol) {
  if (B.rows() != spec.n() || B.cols() != spec.n())
    throw ShapeError("B must be n x n");
  const CMatrix bt = to_jordan_coordinates(spec, B);
  const double cut = tol.eq_rel * (1.0 + bt.norm());
  Membership out;
  out.member = true;

  auto record = [&](Index i, Index j, double dev) {
    out.deviation = std::max(out.deviation, dev);
    if (dev > cut && out.member) {
      out.member = false;
      out.witness = {i, j};
    }
  };

  if (spec.field() == Field::Real) {
    for (Index i = 0; i < bt.rows(); ++i)
      for (Index j = 0; j < bt.cols(); ++j) record(i, j, std::abs(bt(i, j).imag()));
    if (!out.member) return out;
  }

  auto coeffs = read_coeffs(spec, bt);
  const CMatrix expected = assemble_tilde(spec, coeffs);
  for (Index i = 0; i < bt.rows(); ++i)
    for (Index j = 0; j < bt.cols(); ++j) record(i, j, std::abs(bt(i, j) - expected(i, j)));
  return out;
}

BicommElement extract_bicomm_coeffs(const JordanSpec& spec, const Mat& B,
                                    const Tolerances& tol) {
  const Membership m = check_bicomm_membership(spec, B, tol);
  if (!m.member) {
    std::ostringstream os;
    os << "B is not in the bicommutant of A: entry (" << m.witness->first + 1
       << ", " << m.witness->second + 1 << ") of P^-1 B P breaks the pattern";
    throw PreconditionError(os.str());
  }
  BicommElement b{read_coeffs(spec, to_jordan_coordinates(spec, B))};
  if (spec.field() == Field::Real)
    for (std::size_t j = 0; j < b.coeffs.size(); ++j)
      if (spec.unit(j) == 1)
        for (Complex& t : b.coeffs[j]) t = t.real();
  return b;
}

BicommElement bicomm_from_taylor(const JordanSpec& spec,
                                 const std::function<Complex(Complex, int)>& coeff) {
  BicommElement b;
  for (std::size_t j = 0; j < spec.eigens().size(); ++j) {
    std::vector<Complex> t(spec.leading_size(j));
    for (int i = 0; i < spec.leading_size(j); ++i)
      t[i] = coeff(spec.eigens()[j].lambda, i);
    b.coeffs.push_back(std::move(t));
  }
  return b;
}

BicommElement bicomm_identity(const JordanSpec& spec) {
  return bicomm_from_taylor(spec, [](Complex, int i) { return Complex(i == 0 ? 1.0 : 0.0); });
}

BicommElement bicomm_of_A(const JordanSpec& spec) {
  return bicomm_from_taylor(spec, [](Complex l, int i) {
    return i == 0 ? l : Complex(i == 1 ? 1.0 : 0.0);
  });
}

BicommElement bicomm_shifted_inverse(const JordanSpec& spec, Complex shift) {
  return bicomm_from_taylor(spec, [shift](Complex l, int i) {
    const Complex base = l + shift;
    Complex p = base;
    for (int k = 0; k < i; ++k) p *= base;
    return (i % 2 == 0 ? 1.0 : -1.0) / p;
  });
}

BicommElement operator+(const BicommElement& a, const BicommElement& b) {
  if (a.coeffs.size() != b.coeffs.size()) throw ShapeError("coefficient shapes differ");
  BicommElement out = a;
  for (std::size_t j = 0; j < a.coeffs.size(); ++j) {
    if (a.coeffs[j].size() != b.coeffs[j].size())
      throw ShapeError("coefficient shapes differ");
    for (std::size_t i = 0; i < a.coeffs[j].size(); ++i) out.coeffs[j][i] += b.coeffs[j][i];
  }
  return out;
}

BicommElement operator*(Complex s, const BicommElement& a) {
  BicommElement out = a;
  for (auto& t : out.coeffs)
    for (Complex& v : t) v *= s;
  return out;
}

}  // namespace lyap
