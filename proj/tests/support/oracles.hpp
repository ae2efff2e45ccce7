#pragma once

// Reference computations that avoid the library's own decomposition code.

#include <algorithm>
#include <vector>

#include <Eigen/SVD>

#include "twoproj/matcore.hpp"

namespace oracles {

using twoproj::CMatrix;
using twoproj::Index;

// Column-major Kronecker product.
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Nullity of a stack of linear maps on vec(Z), thresholded relative to the
// largest singular value.
inline Index nullity(const CMatrix& map, double rel_tol) {
  Eigen::JacobiSVD<CMatrix> svd(map);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  Index rank = 0;
  for (Index k = 0; k < s.size(); ++k)
    if (s(k) > rel_tol * std::max(smax, 1.0)) ++rank;
  return map.cols() - rank;
}

// dim { Z : ZP = PZ, ZQ = QZ }.
inline Index commutant_nullity(const CMatrix& p, const CMatrix& q, double rel_tol) {
  const Index n = p.rows();
  const CMatrix id = CMatrix::Identity(n, n);
  CMatrix map(2 * n * n, n * n);
  map.topRows(n * n) = kron(p.transpose(), id) - kron(id, p);
  map.bottomRows(n * n) = kron(q.transpose(), id) - kron(id, q);
  return nullity(map, rel_tol);
}

// dim { Z : ZP = QZ } or, with both, also ZQ = PZ.
inline Index intertwiner_nullity(const CMatrix& p, const CMatrix& q, double rel_tol, bool both) {
  const Index n = p.rows();
  const CMatrix id = CMatrix::Identity(n, n);
  CMatrix map(both ? 2 * n * n : n * n, n * n);
  map.topRows(n * n) = kron(p.transpose(), id) - kron(id, q);
  if (both) map.bottomRows(n * n) = kron(q.transpose(), id) - kron(id, p);
  return nullity(map, rel_tol);
}

// Orthonormal basis of the range of a (possibly non-normal) matrix.
inline CMatrix range_basis(const CMatrix& m, double tol) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU);
  Index r = 0;
  for (Index k = 0; k < svd.singularValues().size(); ++k)
    if (svd.singularValues()(k) > tol) ++r;
  return svd.matrixU().leftCols(r);
}

// Squared cosines of the principal angles between ran P and ran Q that lie
// strictly inside (tol, 1 - tol), ascending.
inline std::vector<double> principal_cos2(const CMatrix& p, const CMatrix& q, double tol) {
  const CMatrix up = range_basis(p, 0.5);
  const CMatrix uq = range_basis(q, 0.5);
  std::vector<double> out;
  if (up.cols() == 0 || uq.cols() == 0) return out;
  Eigen::JacobiSVD<CMatrix> svd(up.adjoint() * uq);
  for (Index k = 0; k < svd.singularValues().size(); ++k) {
    const double c2 = svd.singularValues()(k) * svd.singularValues()(k);
    if (c2 > tol && c2 < 1.0 - tol) out.push_back(c2);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracles
