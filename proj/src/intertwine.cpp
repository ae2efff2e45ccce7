#include "twoproj/intertwine.hpp"

#include <algorithm>

#include <cmath>
#include <sstream>

#include "twoproj/random.hpp"

namespace twoproj {

namespace {

void require_shape(const CMatrix& m, Index rows, Index cols, const char* name) {
  if (m.rows() != rows || m.cols() != cols) {
    std::ostringstream os;
    os << name << " is " << m.rows() << "x" << m.cols() << ", expected " << rows << "x" << cols;
    throw Error(ErrorKind::DimMismatch, os.str());
  }
}

void require_unitary(const CMatrix& m, Index d, const char* name, const Tolerance& tol) {
  require_shape(m, d, d, name);
  if (d == 0) return;
  const double res = spectral_norm(m.adjoint() * m - identity(d));
  if (res > tol.atol) {
    std::ostringstream os;
    os << name << " is not unitary: ||X*X - I|| = " << res;
    throw Error(ErrorKind::NotUnitary, os.str());
  }
}

void require_commuting(const CMatrix& v, const CMatrix& h, const char* what, const Tolerance& tol) {
  const double res = spectral_norm(v * h - h * v);
  if (res > tol.atol) {
    std::ostringstream os;
    os << what << ": commutator norm " << res << " exceeds atol";
    throw Error(ErrorKind::NotCommuting, os.str());
  }
}

void require_swap_dims(const HalmosDecomposition& dec) {
  if (dec.dims.d01 != dec.dims.d10) {
    std::ostringstream os;
    os << "dim M01 = " << dec.dims.d01 << " differs from dim M10 = " << dec.dims.d10;
    throw Error(ErrorKind::DimMismatch, os.str());
  }
}

// Corner part of a family member: U0 + [0 U10; U01 0] + U1 in the frame.
CMatrix corner_part(const HalmosDecomposition& dec, const IntertwinerParams& p, const Tolerance& tol) {
  require_swap_dims(dec);
  const SubspaceDims& d = dec.dims;
  require_unitary(p.U0, d.d00, "U0", tol);
  require_unitary(p.U1, d.d11, "U1", tol);
  require_unitary(p.U10, d.d01, "U10", tol);
  require_unitary(p.U01, d.d10, "U01", tol);

  const Index c = d.d00 + d.d01 + d.d10 + d.d11;
  CMatrix z = CMatrix::Zero(c, c);
  const Index o01 = d.d00, o10 = d.d00 + d.d01, o11 = d.d00 + d.d01 + d.d10;
  z.block(0, 0, d.d00, d.d00) = p.U0;
  z.block(o01, o10, d.d01, d.d10) = p.U10;
  z.block(o10, o01, d.d10, d.d01) = p.U01;
  z.block(o11, o11, d.d11, d.d11) = p.U1;
  const CMatrix f = dec.frame().leftCols(c);
  return f * z * f.adjoint();
}

CMatrix doubled(const CMatrix& v) {
  const Index k = v.rows();
  CMatrix out = CMatrix::Zero(2 * k, 2 * k);
  out.topLeftCorner(k, k) = v;
  out.bottomRightCorner(k, k) = v;
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix diag_of(const RVector& v) {
  CMatrix out = CMatrix::Zero(v.size(), v.size());
  for (Index k = 0; k < v.size(); ++k) out(k, k) = v(k);
  return out;
}

SusyCanonicalForm canonical_on(const CMatrix& a_g, const CMatrix& b_g, const CMatrix& g,
                               const Tolerance& tol) {
  const Index m = a_g.rows();
  SusyCanonicalForm out;
  if (m == 0) {
    out.Y = CMatrix(g.rows(), 0);
    out.a = CMatrix(0, 0);
    out.a_values = RVector(0);
    return out;
  }
  const EigenSystem es = herm_eig(a_g, tol);
  std::vector<Index> pos, neg;
  for (Index j = 0; j < m; ++j) (es.values(j) > 0.0 ? pos : neg).push_back(j);
  if (pos.size() != neg.size()) {
    std::ostringstream os;
    os << "positive and negative spectral subspaces of A have dimensions " << pos.size() << " and "
       << neg.size();
    throw Error(ErrorKind::NotGeneric, os.str());
  }
  const Index k = static_cast<Index>(pos.size());
  CMatrix n_pos(m, k), n_neg(m, k);
  RVector a_values(k);
  for (Index j = 0; j < k; ++j) {
    n_pos.col(j) = es.vectors.col(pos[static_cast<std::size_t>(j)]);
    // negative eigenvalues by increasing modulus
    const Index src = neg[static_cast<std::size_t>(k - 1 - j)];
    n_neg.col(j) = es.vectors.col(src);
    a_values(j) = -es.values(src);
  }
  phase_fix_columns(n_pos);
  phase_fix_columns(n_neg);
  const CMatrix b_block = n_pos.adjoint() * b_g * n_neg;
  const CMatrix u = polar_unitary(b_block, tol);
  CMatrix y_local(m, m);
  y_local.leftCols(k) = n_pos * u;
  y_local.rightCols(k) = n_neg;
  out.Y = g * y_local;
  out.a_values = a_values;
  out.a = diag_of(a_values);
  out.clusters = cluster_eigenvalues(a_values, tol.rank_tol);
  return out;
}

}  // namespace

IntertwinerParams identity_params(const HalmosDecomposition& dec) {
  require_swap_dims(dec);
  const SubspaceDims& d = dec.dims;
  return {identity(d.d00), identity(d.d11), identity(d.d01), identity(d.d10), identity(d.dM)};
}

IntertwinerParams random_params(const HalmosDecomposition& dec, std::uint64_t seed) {
  require_swap_dims(dec);
  const SubspaceDims& d = dec.dims;
  Rng rng(seed);
  IntertwinerParams p;
  p.U0 = haar_unitary(d.d00, rng);
  p.U1 = haar_unitary(d.d11, rng);
  p.U10 = haar_unitary(d.d01, rng);
  p.U01 = haar_unitary(d.d10, rng);
  p.V = CMatrix::Zero(d.dM, d.dM);
  for (const auto& c : dec.clusters) p.V.block(c.begin, c.begin, c.size, c.size) = haar_unitary(c.size, rng);
  return p;
}

CMatrix function_of_h(const HalmosDecomposition& dec, const std::vector<Complex>& samples) {
  if (samples.size() != dec.clusters.size()) {
    std::ostringstream os;
    os << "expected " << dec.clusters.size() << " samples (one per eigenvalue cluster of H), got "
       << samples.size();
    throw Error(ErrorKind::DimMismatch, os.str());
  }
  CMatrix v = CMatrix::Zero(dec.dims.dM, dec.dims.dM);
  for (std::size_t c = 0; c < samples.size(); ++c) {
    const auto& cl = dec.clusters[c];
    for (Index j = cl.begin; j < cl.begin + cl.size; ++j) v(j, j) = samples[c];
  }
  return v;
}

CMatrix general_unitary_halmos(const HalmosDecomposition& dec, const IntertwinerParams& params,
                               const Tolerance& tol) {
  const CMatrix corners = corner_part(dec, params, tol);
  require_unitary(params.V, dec.dims.dM, "V", tol);
  require_commuting(params.V, dec.snapped_H(), "V must commute with H", tol);
  return corners + embed_generic(dec, doubled(params.V) * generic_rotation(dec));
}

CMatrix wdd_unitary(const HalmosDecomposition& dec, const CMatrix& s, const Tolerance& tol) {
  require_swap_dims(dec);
  const SubspaceDims& d = dec.dims;
  require_shape(s, d.d01, d.d10, "S");
  IntertwinerParams p = identity_params(dec);
  p.U10 = s;
  p.U01 = s.adjoint();
  return general_unitary_halmos(dec, p, tol);
}

CMatrix sgn_b(const OrthProjPair& pair, const HalmosDecomposition& dec, const Tolerance& tol) {
  if (dec.dims.d01 != 0 || dec.dims.d10 != 0)
    throw Error(ErrorKind::NotInjective, "B vanishes on M01 + M10");
  const EigenSystem es = herm_eig(pair.B(), tol);
  const double smallest = es.values.cwiseAbs().minCoeff();
  if (smallest <= tol.rank_tol) {
    std::ostringstream os;
    os << "B has an eigenvalue of modulus " << smallest << " <= rank_tol";
    throw Error(ErrorKind::NotInjective, os.str());
  }
  RVector signs(es.values.size());
  for (Index k = 0; k < signs.size(); ++k) signs(k) = es.values(k) > 0.0 ? 1.0 : -1.0;
  const CMatrix out = es.vectors * signs.cast<Complex>().asDiagonal() * es.vectors.adjoint();
  return 0.5 * (out + out.adjoint());
}

SusyCanonicalForm susy_canonical(const OrthProjPair& pair, const Tolerance& tol) {
  for (const CMatrix* m : {&pair.A(), &pair.B()}) {
    const double smallest = herm_eig(*m, tol).values.cwiseAbs().minCoeff();
    if (smallest <= tol.rank_tol) {
      std::ostringstream os;
      os << (m == &pair.A() ? "A" : "B") << " has an eigenvalue of modulus " << smallest
         << " <= rank_tol";
      throw Error(ErrorKind::NotGeneric, os.str());
    }
  }
  return canonical_on(pair.A(), pair.B(), identity(pair.dim()), tol);
}

SusyCanonicalForm susy_canonical(const OrthProjPair& pair, const HalmosDecomposition& dec,
                                 const Tolerance& tol) {
  const CMatrix g = dec.generic_frame();
  const CMatrix a_g = g.adjoint() * pair.A() * g;
  const CMatrix b_g = g.adjoint() * pair.B() * g;
  return canonical_on(0.5 * (a_g + a_g.adjoint()), 0.5 * (b_g + b_g.adjoint()), g, tol);
}

VerificationReport verify_susy_canonical(const OrthProjPair& pair, const HalmosDecomposition& dec,
                                         const SusyCanonicalForm& canon, const Tolerance& tol) {
  const Index k = canon.a.rows();
  const CMatrix g = dec.generic_frame();
  const CMatrix proj = g * g.adjoint();
  CMatrix a_form = CMatrix::Zero(2 * k, 2 * k);
  a_form.topLeftCorner(k, k) = canon.a;
  a_form.bottomRightCorner(k, k) = -canon.a;
  CMatrix b_form = CMatrix::Zero(2 * k, 2 * k);
  RVector s(k);
  for (Index j = 0; j < k; ++j) s(j) = std::sqrt(std::max(0.0, 1.0 - canon.a_values(j) * canon.a_values(j)));
  b_form.topRightCorner(k, k) = diag_of(s);
  b_form.bottomLeftCorner(k, k) = diag_of(s);

  VerificationReport rep;
  rep.tolerance_used = tol;
  rep.add("A_canonical", spectral_norm(canon.Y * a_form * canon.Y.adjoint() - proj * pair.A() * proj),
          tol.atol);
  rep.add("B_canonical", spectral_norm(canon.Y * b_form * canon.Y.adjoint() - proj * pair.B() * proj),
          tol.atol);
  rep.add("Y_isometry", spectral_norm(canon.Y.adjoint() * canon.Y - identity(2 * k)), tol.atol);
  return rep;
}

CMatrix general_unitary_susy(const HalmosDecomposition& dec, const SusyCanonicalForm& canon,
                             const IntertwinerParams& params, const Tolerance& tol) {
  const CMatrix corners = corner_part(dec, params, tol);
  const Index k = canon.a.rows();
  if (k != dec.dims.dM) throw Error(ErrorKind::DimMismatch, "canonical form does not match dim M");
  require_unitary(params.V, k, "v", tol);
  require_commuting(params.V, diag_of(snap_to_clusters(canon.a_values, canon.clusters)),
                    "v must commute with a", tol);
  CMatrix swap = CMatrix::Zero(2 * k, 2 * k);
  swap.topRightCorner(k, k) = params.V;
  swap.bottomLeftCorner(k, k) = params.V;
  return corners + canon.Y * swap * canon.Y.adjoint();
}

VerificationReport verify_symmetric_intertwiner(const OrthProjPair& pair, const CMatrix& u,
                                                const Tolerance& tol) {
  require_shape(u, pair.dim(), pair.dim(), "U");
  const CMatrix& p = pair.P();
  const CMatrix& q = pair.Q();
  VerificationReport rep;
  rep.tolerance_used = tol;
  rep.add("unitarity", spectral_norm(u.adjoint() * u - identity(pair.dim())), tol.atol);
  rep.add("UP-QU", spectral_norm(u * p - q * u), tol.atol);
  rep.add("UQ-PU", spectral_norm(u * q - p * u), tol.atol);
  return rep;
}

Factorization factor_through(const CMatrix& v, const CMatrix& v0, const CMatrix& p, const CMatrix& q,
                             const Tolerance& tol) {
  require_square(v0, "V0");
  require_shape(v, v0.rows(), v0.cols(), "V");
  require_shape(p, v0.rows(), v0.cols(), "P");
  require_shape(q, v0.rows(), v0.cols(), "Q");
  const double smin = smallest_singular_value(v0);
  if (smin <= tol.rank_tol) {
    std::ostringstream os;
    os << "V0 has smallest singular value " << smin;
    throw Error(ErrorKind::Singular, os.str());
  }
  Factorization out;
  out.C = v * v0.fullPivLu().inverse();
  const double bound = tol.atol * std::max(1.0, spectral_norm(out.C)) * condition_number(v0);
  out.report.tolerance_used = tol;
  out.report.add("CP-PC", spectral_norm(out.C * p - p * out.C), bound);
  out.report.add("CQ-QC", spectral_norm(out.C * q - q * out.C), bound);
  return out;
}

std::vector<CMatrix> oracle_intertwiner_space(const CMatrix& p, const CMatrix& q, const Tolerance& tol,
                                              Relation relation) {
  require_square(p, "P");
  require_shape(q, p.rows(), p.cols(), "Q");
  const Index n = p.rows();
  const CMatrix id = identity(n);
  // column-major vec: vec(ZX) = (X^T kron I) vec(Z), vec(XZ) = (I kron X) vec(Z)
  const CMatrix first = kron(p.transpose(), id) - kron(id, q);
  CMatrix map;
  if (relation == Relation::symmetric) {
    map.resize(2 * n * n, n * n);
    map.topRows(n * n) = first;
    map.bottomRows(n * n) = kron(q.transpose(), id) - kron(id, p);
  } else {
    map = first;
  }
  const CMatrix null = nullspace(map, tol.rank_tol);
  std::vector<CMatrix> basis;
  basis.reserve(static_cast<std::size_t>(null.cols()));
  for (Index j = 0; j < null.cols(); ++j) {
    CMatrix z(n, n);
    for (Index c = 0; c < n; ++c) z.col(c) = null.col(j).segment(c * n, n);
    basis.push_back(std::move(z));
  }
  return basis;
}

}  // namespace twoproj
