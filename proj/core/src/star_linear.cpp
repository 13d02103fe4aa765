#include "lyap/star_linear.hpp"

#include <sstream>

#include "lyap/errors.hpp"
#include "lyap/random.hpp"

namespace lyap {

StarLinearMap::StarLinearMap(Index n, Index q, Mat L)
    : n_(n), q_(q), L_(std::move(L)) {
  if (n < 0 || q < 0 || L_.rows() != n * n || L_.cols() != q * q) {
    std::ostringstream os;
    os << "matricization must be " << n * n << "x" << q * q << ", got "
       << L_.rows() << "x" << L_.cols();
    throw ShapeError(os.str());
  }
}

Mat apply(const StarLinearMap& map, const Mat& V) {
  if (V.rows() != map.q() || V.cols() != map.q())
    throw ShapeError("apply: argument must be q x q");
  return unvec(map.L() * vec(V), map.n(), map.n());
}

// Choi(i*n + k, j*n + l) = map(E_ij)(k, l) = L(l*n + k, j*q + i).
Mat choi(const StarLinearMap& map) {
  const Index n = map.n(), q = map.q();
  const CMatrix& L = map.L().entries();
  CMatrix c(n * q, n * q);
  for (Index i = 0; i < q; ++i)
    for (Index j = 0; j < q; ++j)
      for (Index k = 0; k < n; ++k)
        for (Index l = 0; l < n; ++l) c(i * n + k, j * n + l) = L(l * n + k, j * q + i);
  return Mat::computed(std::move(c), map.field());
}

StarLinearMap matricization_from_choi(const Mat& BL, Index n, Index q) {
  if (BL.rows() != n * q || BL.cols() != n * q)
    throw ShapeError("Choi matrix must be nq x nq");
  CMatrix L(n * n, q * q);
  for (Index i = 0; i < q; ++i)
    for (Index j = 0; j < q; ++j)
      for (Index k = 0; k < n; ++k)
        for (Index l = 0; l < n; ++l) L(l * n + k, j * q + i) = BL(i * n + k, j * n + l);
  return StarLinearMap(n, q, Mat::computed(std::move(L), BL.field()));
}

Mat block(const StarLinearMap& map, Index i, Index j) {
  const Index n = map.n(), q = map.q();
  if (i < 0 || i >= n || j < 0 || j >= q) throw ShapeError("block index out of range");
  return Mat::computed(map.L().entries().block(i * n, j * q, n, q), map.field());
}

bool choi_is_hermitian(const StarLinearMap& map, const Tolerances& tol) {
  return is_hermitian(choi(map), tol);
}

bool has_entry_symmetry(const StarLinearMap& map, const Tolerances& tol) {
  const Index n = map.n(), q = map.q();
  const Mat& L = map.L();
  double diff2 = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < q; ++j)
      for (Index k = 0; k < n; ++k)
        for (Index l = 0; l < q; ++l)
          diff2 += std::norm(block_entry(L, n, q, i, j, k, l) -
                             std::conj(block_entry(L, n, q, k, l, i, j)));
  return std::sqrt(diff2) <= tol.eq_rel * (1.0 + L.norm());
}

bool is_star_linear(const StarLinearMap& map, const Tolerances& tol) {
  const bool a = choi_is_hermitian(map, tol);
  const bool b = has_entry_symmetry(map, tol);
  if (a != b) throw NumericalError("Choi Hermiticity and entry symmetry disagree");
  return a;
}

PsdReport is_completely_positive(const StarLinearMap& map, const Tolerances& tol) {
  if (!is_star_linear(map, tol)) throw PreconditionError("map is not *-linear");
  return is_psd(choi(map), tol);
}

SampleTestResult positivity_sample_test(const StarLinearMap& map,
                                        std::size_t trials, std::uint64_t seed,
                                        const Tolerances& tol) {
  if (!is_star_linear(map, tol)) throw PreconditionError("map is not *-linear");
  const Mat c = choi(map);
  const double cut = -tol.psd_rel * (1.0 + spectral_norm(c));
  SampleTestResult out;
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    ++out.trials;
    Mat x = rng.unit_vector(map.n(), map.field());
    Mat z = rng.unit_vector(map.q(), map.field());
    const Mat w = kron(z, x);
    const double value = (w.adjoint() * c * w)(0, 0).real();
    if (value < cut) {
      out.witness = PositivityWitness{std::move(x), std::move(z), value};
      break;
    }
  }
  return out;
}

StarLinearMap compose(const StarLinearMap& f, const StarLinearMap& g) {
  if (g.q() != f.n()) throw ShapeError("compose: g.q must equal f.n");
  return StarLinearMap(g.n(), f.q(), g.L() * f.L());
}

StarLinearMap inverse(const StarLinearMap& map, const Tolerances& tol) {
  if (map.n() != map.q()) throw ShapeError("inverse: map must be square");
  return StarLinearMap(map.n(), map.q(), lyap::inverse(map.L(), tol));
}

StarLinearMap identity_map(Index n, Field field) {
  return StarLinearMap(n, n, Mat::identity(n * n, field));
}

StarLinearMap zero_map(Index n, Index q, Field field) {
  return StarLinearMap(n, q, Mat::zeros(n * n, q * q, field));
}

StarLinearMap transpose_map(Index n) {
  return StarLinearMap(n, n, canonical_shuffle(n, n));
}

StarLinearMap conjugation_map(const Mat& X) {
  return StarLinearMap(X.rows(), X.cols(), kron(X.conjugate(), X));
}

}  // namespace lyap
