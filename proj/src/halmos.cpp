#include "twoproj/halmos.hpp"

#include <cmath>
#include <sstream>

namespace twoproj {

namespace {

template <typename Pred>
CMatrix select_columns(const EigenSystem& es, Pred keep) {
  std::vector<Index> idx;
  for (Index k = 0; k < es.values.size(); ++k)
    if (keep(es.values(k))) idx.push_back(k);
  CMatrix out(es.vectors.rows(), static_cast<Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) out.col(static_cast<Index>(j)) = es.vectors.col(idx[j]);
  return out;
}

// Orthonormal basis of span(L) (-) span(K), where L has orthonormal columns
// and span(K) is (numerically) contained in span(L).
CMatrix complement_within(const CMatrix& l, const CMatrix& k, const Tolerance& tol) {
  const Index r = l.cols();
  if (r == 0) return l;
  const CMatrix c = l.adjoint() * k;
  const CMatrix proj = identity(r) - c * c.adjoint();
  const EigenSystem es = herm_eig(0.5 * (proj + proj.adjoint()), tol);
  const CMatrix vecs = select_columns(es, [](double v) { return v > 0.5; });
  if (vecs.cols() != r - k.cols()) {
    std::ostringstream os;
    os << "complement of a " << k.cols() << "-dimensional subspace inside a " << r
       << "-dimensional one has dimension " << vecs.cols();
    throw Error(ErrorKind::InconsistentDims, os.str());
  }
  return l * vecs;
}

CMatrix hcat(std::initializer_list<const CMatrix*> parts, Index rows) {
  Index cols = 0;
  for (const CMatrix* p : parts) cols += p->cols();
  CMatrix out(rows, cols);
  Index at = 0;
  for (const CMatrix* p : parts) {
    out.middleCols(at, p->cols()) = *p;
    at += p->cols();
  }
  return out;
}

CMatrix diag_of(const RVector& v) {
  CMatrix out = CMatrix::Zero(v.size(), v.size());
  for (Index k = 0; k < v.size(); ++k) out(k, k) = v(k);
  return out;
}

}  // namespace

CMatrix HalmosDecomposition::frame() const {
  return hcat({&basis00, &basis01, &basis10, &basis11, &basisM, &basisMprime}, dim);
}

CMatrix HalmosDecomposition::generic_frame() const { return hcat({&basisM, &basisMprime}, dim); }

CMatrix HalmosDecomposition::gauge() const {
  const Index k = dims.dM;
  CMatrix wb = CMatrix::Zero(2 * k, 2 * k);
  wb.topLeftCorner(k, k).setIdentity();
  wb.bottomRightCorner(k, k) = W;
  return wb;
}

CMatrix HalmosDecomposition::snapped_H() const { return diag_of(snap_to_clusters(h, clusters)); }

HalmosDecomposition halmos_decompose(const OrthProjPair& pair, const Tolerance& tol) {
  tol.validate();
  const Index n = pair.dim();
  const double rt = tol.rank_tol;
  HalmosDecomposition dec;
  dec.dim = n;
  dec.tol = tol;

  const EigenSystem eig_a = herm_eig(pair.A(), tol);
  const EigenSystem eig_b = herm_eig(pair.B(), tol);
  dec.basis01 = select_columns(eig_a, [rt](double v) { return std::abs(v - 1.0) <= rt; });
  dec.basis10 = select_columns(eig_a, [rt](double v) { return std::abs(v + 1.0) <= rt; });
  dec.basis00 = select_columns(eig_b, [rt](double v) { return std::abs(v + 1.0) <= rt; });
  dec.basis11 = select_columns(eig_b, [rt](double v) { return std::abs(v - 1.0) <= rt; });
  for (CMatrix* b : {&dec.basis00, &dec.basis01, &dec.basis10, &dec.basis11}) phase_fix_columns(*b);

  const EigenSystem eig_p = herm_eig(pair.P(), tol);
  const CMatrix range_p = select_columns(eig_p, [](double v) { return v > 0.5; });
  const CMatrix ker_p = select_columns(eig_p, [](double v) { return v <= 0.5; });

  const CMatrix m_raw =
      complement_within(range_p, hcat({&dec.basis00, &dec.basis01}, n), tol);
  const CMatrix mprime_raw =
      complement_within(ker_p, hcat({&dec.basis10, &dec.basis11}, n), tol);
  if (m_raw.cols() != mprime_raw.cols()) {
    std::ostringstream os;
    os << "dim M = " << m_raw.cols() << " differs from dim M' = " << mprime_raw.cols();
    throw Error(ErrorKind::InconsistentDims, os.str());
  }
  const Index k = m_raw.cols();

  dec.dims = {dec.basis00.cols(), dec.basis01.cols(), dec.basis10.cols(), dec.basis11.cols(), k};
  if (dec.dims.total() != n)
    throw Error(ErrorKind::InconsistentDims, "subspace dimensions do not add up to the ambient dimension");

  if (k > 0) {
    const CMatrix h_raw = m_raw.adjoint() * pair.Q() * m_raw;
    const EigenSystem eig_h = herm_eig(0.5 * (h_raw + h_raw.adjoint()), tol);
    dec.h = eig_h.values;
    for (Index j = 0; j < k; ++j) {
      if (!(dec.h(j) > rt && dec.h(j) < 1.0 - rt)) {
        std::ostringstream os;
        os << "generic eigenvalue " << dec.h(j) << " is not inside (rank_tol, 1 - rank_tol)";
        throw Error(ErrorKind::InconsistentDims, os.str());
      }
    }
    dec.basisM = m_raw * eig_h.vectors;
    phase_fix_columns(dec.basisM);
    CMatrix partners(n, k);
    for (Index j = 0; j < k; ++j) {
      const double hj = dec.h(j);
      partners.col(j) = (pair.Q() * dec.basisM.col(j) - hj * dec.basisM.col(j)) /
                        std::sqrt(hj * (1.0 - hj));
    }
    dec.basisMprime = orthonormalize(partners);
  } else {
    dec.h = RVector(0);
    dec.basisM = CMatrix(n, 0);
    dec.basisMprime = CMatrix(n, 0);
  }
  dec.H = diag_of(dec.h);
  dec.W = identity(k);
  dec.clusters = cluster_eigenvalues(dec.h, rt);
  return dec;
}

CMatrix embed_generic(const HalmosDecomposition& dec, const CMatrix& x) {
  const CMatrix g = dec.generic_frame();
  const CMatrix wb = dec.gauge();
  return g * wb.adjoint() * x * wb * g.adjoint();
}

CMatrix generic_coordinates(const HalmosDecomposition& dec, const CMatrix& t) {
  const CMatrix g = dec.generic_frame();
  const CMatrix wb = dec.gauge();
  return wb * g.adjoint() * t * g * wb.adjoint();
}

CMatrix generic_rotation(const HalmosDecomposition& dec) {
  const Index k = dec.dims.dM;
  CMatrix r = CMatrix::Zero(2 * k, 2 * k);
  for (Index j = 0; j < k; ++j) {
    const double c = std::sqrt(dec.h(j));
    const double s = std::sqrt(1.0 - dec.h(j));
    r(j, j) = c;
    r(j, k + j) = s;
    r(k + j, j) = s;
    r(k + j, k + j) = -c;
  }
  return r;
}

std::pair<CMatrix, CMatrix> reconstruct(const HalmosDecomposition& dec) {
  const Index n = dec.dim;
  const SubspaceDims& d = dec.dims;
  auto check = [n](const CMatrix& b, Index cols, const char* name) {
    if (b.rows() != n || b.cols() != cols) {
      std::ostringstream os;
      os << name << " is " << b.rows() << "x" << b.cols() << ", expected " << n << "x" << cols;
      throw Error(ErrorKind::InconsistentDims, os.str());
    }
  };
  check(dec.basis00, d.d00, "basis00");
  check(dec.basis01, d.d01, "basis01");
  check(dec.basis10, d.d10, "basis10");
  check(dec.basis11, d.d11, "basis11");
  check(dec.basisM, d.dM, "basisM");
  check(dec.basisMprime, d.dM, "basisMprime");
  if (d.total() != n) throw Error(ErrorKind::InconsistentDims, "dimensions do not sum to n");
  if (dec.W.rows() != d.dM || dec.W.cols() != d.dM || dec.h.size() != d.dM)
    throw Error(ErrorKind::InconsistentDims, "W or H does not match dim M");

  const Index k = d.dM;
  CMatrix p_gen = CMatrix::Zero(2 * k, 2 * k);
  p_gen.topLeftCorner(k, k).setIdentity();
  CMatrix q_gen = CMatrix::Zero(2 * k, 2 * k);
  for (Index j = 0; j < k; ++j) {
    const double hj = dec.h(j);
    const double off = std::sqrt(hj * (1.0 - hj));
    q_gen(j, j) = hj;
    q_gen(j, k + j) = off;
    q_gen(k + j, j) = off;
    q_gen(k + j, k + j) = 1.0 - hj;
  }
  auto proj = [](const CMatrix& b) -> CMatrix { return b * b.adjoint(); };
  CMatrix p = proj(dec.basis00) + proj(dec.basis01) + embed_generic(dec, p_gen);
  CMatrix q = proj(dec.basis00) + proj(dec.basis10) + embed_generic(dec, q_gen);
  return {std::move(p), std::move(q)};
}

bool exists_symmetric_unitary(const HalmosDecomposition& dec) { return dec.dims.d01 == dec.dims.d10; }

Index commutant_dim(const HalmosDecomposition& dec, const Tolerance& tol) {
  const SubspaceDims& d = dec.dims;
  Index total = d.d00 * d.d00 + d.d01 * d.d01 + d.d10 * d.d10 + d.d11 * d.d11;
  for (const auto& c : cluster_eigenvalues(dec.h, tol.rank_tol)) total += c.size * c.size;
  return total;
}

OrthProjPair pair_from_structure(const SubspaceDims& dims, std::span<const double> h,
                                 const CMatrix& frame, const Tolerance& tol) {
  const Index n = dims.total();
  if (frame.rows() != n || frame.cols() != n)
    throw Error(ErrorKind::InconsistentDims, "frame does not match the subspace dimensions");
  if (static_cast<Index>(h.size()) != dims.dM)
    throw Error(ErrorKind::InconsistentDims, "need one generic eigenvalue per dimension of M");
  for (double v : h)
    if (!(v > 0.0 && v < 1.0)) throw Error(ErrorKind::InvalidArgument, "generic eigenvalues must lie in (0,1)");

  const Index k = dims.dM;
  const Index corner = dims.d00 + dims.d01 + dims.d10 + dims.d11;
  CMatrix p = CMatrix::Zero(n, n);
  CMatrix q = CMatrix::Zero(n, n);
  for (Index i = 0; i < dims.d00; ++i) p(i, i) = q(i, i) = 1.0;
  for (Index i = dims.d00; i < dims.d00 + dims.d01; ++i) p(i, i) = 1.0;
  for (Index i = dims.d00 + dims.d01; i < dims.d00 + dims.d01 + dims.d10; ++i) q(i, i) = 1.0;
  for (Index j = 0; j < k; ++j) {
    const Index a = corner + j;
    const Index b = corner + k + j;
    const double off = std::sqrt(h[j] * (1.0 - h[j]));
    p(a, a) = 1.0;
    q(a, a) = h[j];
    q(a, b) = off;
    q(b, a) = off;
    q(b, b) = 1.0 - h[j];
  }
  return make_orth_pair(frame * p * frame.adjoint(), frame * q * frame.adjoint(), tol);
}

OrthProjPair random_structured_pair(const SubspaceDims& dims, std::span<const double> h,
                                    std::uint64_t seed) {
  Rng rng(seed);
  return pair_from_structure(dims, h, haar_unitary(dims.total(), rng), Tolerance{});
}

OrthProjPair random_structured_pair(const SubspaceDims& dims, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  std::vector<double> h(static_cast<std::size_t>(dims.dM));
  for (double& v : h) v = unif(rng);
  return pair_from_structure(dims, h, haar_unitary(dims.total(), rng), Tolerance{});
}

}  // namespace twoproj
