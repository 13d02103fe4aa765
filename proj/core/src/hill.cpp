#include "lyap/hill.hpp"

#include <sstream>

#include "lyap/errors.hpp"
#include "lyap/random.hpp"

namespace lyap {

namespace {

using DenseC = Eigen::MatrixXcd;

// Columns vec(L_ij), (i, j) in row-major order.
DenseC stacked_blocks(const StarLinearMap& map) {
  const Index n = map.n(), q = map.q();
  DenseC v(n * q, n * q);
  const CMatrix& L = map.L().entries();
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < q; ++j)
      for (Index l = 0; l < q; ++l)
        for (Index k = 0; k < n; ++k) v(l * n + k, i * q + j) = L(i * n + k, j * q + l);
  return v;
}

double largest_singular_value(const DenseC& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<DenseC> svd(m);
  if (!svd.singularValues().allFinite()) throw NumericalError("svd breakdown");
  return svd.singularValues()(0);
}

Field rep_field(const HillRep& rep) {
  Field f = rep.H.field();
  for (const Mat& a : rep.A) f = join(f, a.field());
  return f;
}

// A_k(i, j) = conj(alpha(k, i*q + j)).
std::vector<Mat> coefficient_matrices(const DenseC& alpha, Index n, Index q, Field field) {
  std::vector<Mat> out;
  for (Index k = 0; k < alpha.rows(); ++k) {
    CMatrix a(n, q);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < q; ++j) a(i, j) = std::conj(alpha(k, i * q + j));
    out.push_back(Mat::computed(std::move(a), field));
  }
  return out;
}

std::optional<Mat> random_search(const HillRep& rep, const RandomizedWitness& r,
                                 Index dim, bool c1, const Tolerances& tol) {
  Rng rng(r.seed);
  const Field f = rep_field(rep);
  for (std::size_t t = 0; t < r.trials; ++t) {
    Mat v = rng.unit_vector(dim, f);
    if (c1 ? is_c1_witness(rep, v, tol) : is_c2_witness(rep, v, tol)) return v;
  }
  return std::nullopt;
}

Mat pattern_vector(const JordanSpec& spec, bool first) {
  Mat v(spec.n(), 1, Field::Real);
  for (const JordanBlock& b : spec.blocks())
    v.set(first ? b.offset : b.offset + b.dim() - b.unit, 0, 1.0);
  return v;
}

}  // namespace

AhatMatrix ahat(const HillRep& rep) {
  const Index nq = rep.n * rep.q;
  CMatrix a(static_cast<Index>(rep.r()), nq);
  for (std::size_t k = 0; k < rep.r(); ++k) {
    const Mat v = vec(rep.A[k]);
    for (Index c = 0; c < nq; ++c) a(static_cast<Index>(k), c) = std::conj(v(c, 0));
  }
  return {Mat::computed(std::move(a), rep_field(rep))};
}

HillRep minimal_hill_from_blocks(const StarLinearMap& map, const Tolerances& tol) {
  if (!is_star_linear(map, tol)) throw PreconditionError("map is not *-linear");
  const Index n = map.n(), q = map.q();
  const DenseC v = stacked_blocks(map);
  const double smax = largest_singular_value(v);
  const double cut = tol.rank_rel * smax;
  const std::size_t m_choi = rank_tol(choi(map), tol);

  HillRep rep;
  rep.n = n;
  rep.q = q;
  rep.minimal = true;
  std::vector<Index> cols;
  DenseC basis(n * q, 0);
  for (Index c = 0; c < v.cols() && smax > 0.0; ++c) {
    Eigen::VectorXcd r = v.col(c);
    for (int pass = 0; pass < 2; ++pass) r -= basis * (basis.adjoint() * r);
    const double rn = r.norm();
    if (rn > cut) {
      basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
      basis.col(basis.cols() - 1) = r / rn;
      cols.push_back(c);
      rep.selection.push_back({c / q, c % q});
    }
  }
  if (cols.size() != m_choi) {
    std::ostringstream os;
    os << "block span has dimension " << cols.size() << " but the Choi matrix has rank "
       << m_choi;
    throw NumericalError(os.str());
  }

  const Index m = static_cast<Index>(cols.size());
  DenseC chosen(n * q, m);
  for (Index k = 0; k < m; ++k) chosen.col(k) = v.col(cols[k]);
  DenseC alpha = DenseC::Zero(m, n * q);
  if (m > 0) {
    Eigen::ColPivHouseholderQR<DenseC> qr(chosen);
    for (Index c = 0; c < v.cols(); ++c) {
      const Eigen::VectorXcd a = qr.solve(v.col(c));
      const double res = (chosen * a - v.col(c)).norm();
      if (res > tol.eq_rel * v.col(c).norm() + cut)
        throw NumericalError("block expansion residual exceeds tolerance");
      alpha.col(c) = a;
    }
    for (Index k = 0; k < m; ++k) {
      alpha.col(cols[k]).setZero();
      alpha(k, cols[k]) = 1.0;
    }
  }
  rep.A = coefficient_matrices(alpha, n, q, map.field());

  CMatrix h(m, m);
  for (Index k = 0; k < m; ++k)
    for (Index l = 0; l < m; ++l) {
      const BlockIndex& bk = rep.selection[k];
      const BlockIndex& bl = rep.selection[l];
      h(k, l) = block_entry(map.L(), n, q, bk.i, bk.j, bl.i, bl.j);
    }
  rep.H = Mat::computed(std::move(h), map.field());
  return rep;
}

Mat hill_from_choi(const StarLinearMap& map, const AhatMatrix& a, const Tolerances& tol) {
  const Mat& ah = a.Ahat;
  if (ah.cols() != map.n() * map.q()) throw ShapeError("Ahat must have nq columns");
  const Index r = ah.rows();
  if (r == 0) return Mat(0, 0, map.field());
  const Mat gram = ah * ah.adjoint();
  if (rank_tol(gram, tol) < static_cast<std::size_t>(r))
    throw PreconditionError("Ahat does not have full row rank");
  const Mat ginv = inverse(gram, tol);
  const Mat bl = choi(map);
  const Mat ht = ginv * ah * bl * ah.adjoint() * ginv;
  const Mat back = ah.adjoint() * ht * ah;
  if (relative_difference(bl, back) > tol.eq_rel)
    throw PreconditionError("kernel of Ahat is not contained in the kernel of the Choi matrix");
  return ht.transpose();
}

HillRep nonminimal_hill(const StarLinearMap& map, const std::vector<BlockIndex>& selection,
                        const Tolerances& tol) {
  if (!is_star_linear(map, tol)) throw PreconditionError("map is not *-linear");
  const Index n = map.n(), q = map.q();
  bool repeated = false;
  for (std::size_t k = 0; k < selection.size(); ++k) {
    const BlockIndex& b = selection[k];
    if (b.i < 0 || b.i >= n || b.j < 0 || b.j >= q)
      throw ShapeError("selected block index out of range");
    for (std::size_t l = 0; l < k; ++l) repeated = repeated || selection[l] == b;
  }
  const DenseC v = stacked_blocks(map);
  const double smax = largest_singular_value(v);
  const Index r = static_cast<Index>(selection.size());

  DenseC chosen(n * q, r);
  std::vector<Index> cols;
  for (Index k = 0; k < r; ++k) {
    cols.push_back(selection[k].i * q + selection[k].j);
    chosen.col(k) = v.col(cols.back());
  }
  DenseC alpha = DenseC::Zero(r, n * q);
  if (r > 0) {
    Eigen::CompleteOrthogonalDecomposition<DenseC> cod;
    cod.setThreshold(tol.rank_rel);
    cod.compute(chosen);
    for (Index c = 0; c < v.cols(); ++c) {
      const Eigen::VectorXcd a = cod.solve(v.col(c));
      const double res = (chosen * a - v.col(c)).norm();
      if (res > tol.eq_rel * v.col(c).norm() + tol.rank_rel * smax)
        throw PreconditionError("selected blocks do not span all blocks of L");
      alpha.col(c) = a;
    }
  } else if (smax > 0.0) {
    throw PreconditionError("selected blocks do not span all blocks of L");
  }
  // A repeated block cannot be pinned to two rows; keep the min-norm split.
  if (!repeated)
    for (Index k = 0; k < r; ++k) {
      alpha.col(cols[k]).setZero();
      alpha(k, cols[k]) = 1.0;
    }

  HillRep rep;
  rep.n = n;
  rep.q = q;
  rep.selection = selection;
  rep.A = coefficient_matrices(alpha, n, q, map.field());
  CMatrix h(r, r);
  for (Index k = 0; k < r; ++k)
    for (Index l = 0; l < r; ++l) {
      const BlockIndex& bk = selection[k];
      const BlockIndex& bl = selection[l];
      h(k, l) = std::conj(block_entry(map.L(), n, q, bl.i, bl.j, bk.i, bk.j));
    }
  rep.H = Mat::computed(std::move(h), map.field());
  rep.minimal = static_cast<std::size_t>(r) == rank_tol(choi(map), tol);
  return rep;
}

StarLinearMap reconstruct_map(const HillRep& rep) {
  Mat L = Mat::zeros(rep.n * rep.n, rep.q * rep.q, rep_field(rep));
  for (std::size_t k = 0; k < rep.r(); ++k) {
    const Mat ck = rep.A[k].conjugate();
    for (std::size_t l = 0; l < rep.r(); ++l) {
      const Complex h = rep.H(k, l);
      if (h != 0.0) L += h * kron(ck, rep.A[l]);
    }
  }
  return StarLinearMap(rep.n, rep.q, std::move(L));
}

Mat apply_hill(const HillRep& rep, const Mat& V) {
  if (V.rows() != rep.q || V.cols() != rep.q) throw ShapeError("argument must be q x q");
  Mat out = Mat::zeros(rep.n, rep.n, join(rep_field(rep), V.field()));
  for (std::size_t k = 0; k < rep.r(); ++k)
    for (std::size_t l = 0; l < rep.r(); ++l)
      out += rep.H(k, l) * (rep.A[l] * V * rep.A[k].adjoint());
  return out;
}

PsdReport cp_via_hill(const HillRep& rep, const Tolerances& tol) {
  PsdReport p = is_psd(rep.H, tol);
  if (rep.minimal && p.verdict == Psd::Yes && rank_tol(rep.H, tol) < rep.r())
    p.verdict = Psd::Marginal;
  return p;
}

bool is_c1_witness(const HillRep& rep, const Mat& z, const Tolerances& tol) {
  if (z.rows() != rep.q || z.cols() != 1) throw ShapeError("z must be a q-vector");
  if (rep.r() == 0) return true;
  const Mat m = ahat(rep).Ahat * kron(z, Mat::identity(rep.n));
  return rank_tol(m, tol) == rep.r();
}

bool is_c2_witness(const HillRep& rep, const Mat& x, const Tolerances& tol) {
  if (x.rows() != rep.n || x.cols() != 1) throw ShapeError("x must be an n-vector");
  if (rep.r() == 0) return true;
  const Mat m = ahat(rep).Ahat * kron(Mat::identity(rep.q), x);
  return rank_tol(m, tol) == rep.r();
}

Mat structured_c1_vector(const StructuredWitness& s) {
  const JordanSpec& spec = s.spec;
  if (s.pattern == Triangularity::Lower)
    return spec.P_inverse().transpose() * pattern_vector(spec, true);
  return spec.P().conjugate() * pattern_vector(spec, false);
}

Mat structured_c2_vector(const StructuredWitness& s) {
  const JordanSpec& spec = s.spec;
  if (s.pattern == Triangularity::Lower)
    return spec.P().conjugate() * pattern_vector(spec, false);
  return spec.P_inverse().transpose() * pattern_vector(spec, true);
}

std::optional<Mat> find_c1_witness(const HillRep& rep, const WitnessStrategy& strategy,
                                   const Tolerances& tol) {
  if (const auto* s = std::get_if<StructuredWitness>(&strategy)) {
    if (s->spec.n() != rep.q) throw ShapeError("Jordan data size must equal q");
    Mat z = structured_c1_vector(*s);
    if (is_c1_witness(rep, z, tol)) return z;
    return std::nullopt;
  }
  return random_search(rep, std::get<RandomizedWitness>(strategy), rep.q, true, tol);
}

std::optional<Mat> find_c2_witness(const HillRep& rep, const WitnessStrategy& strategy,
                                   const Tolerances& tol) {
  if (const auto* s = std::get_if<StructuredWitness>(&strategy)) {
    if (s->spec.n() != rep.n) throw ShapeError("Jordan data size must equal n");
    Mat x = structured_c2_vector(*s);
    if (is_c2_witness(rep, x, tol)) return x;
    return std::nullopt;
  }
  return random_search(rep, std::get<RandomizedWitness>(strategy), rep.n, false, tol);
}

CpCertificate positivity_equals_cp_certificate(const StarLinearMap& map,
                                               const Tolerances& tol,
                                               RandomizedWitness search) {
  const HillRep rep = minimal_hill_from_blocks(map, tol);
  CpCertificate out;
  out.m = rep.r();
  if (auto z = find_c1_witness(rep, search, tol)) {
    out.certified = true;
    out.kind = CpCertificate::Kind::C1;
    out.witness = std::move(z);
    return out;
  }
  RandomizedWitness second{search.trials, derive_seed(search.seed, 1)};
  if (auto x = find_c2_witness(rep, second, tol)) {
    out.certified = true;
    out.kind = CpCertificate::Kind::C2;
    out.witness = std::move(x);
  }
  return out;
}

}  // namespace lyap
