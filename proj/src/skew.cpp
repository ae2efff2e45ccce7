#include "twoproj/skew.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace twoproj {

IdempotentPair::IdempotentPair(CMatrix p, CMatrix q) : p_(std::move(p)), q_(std::move(q)) {
  a_ = p_ - q_;
  b_ = identity(p_.rows()) - p_ - q_;
}

IdempotentPair make_idempotent_pair(const CMatrix& p, const CMatrix& q, const Tolerance& tol) {
  tol.validate();
  require_square(p, "P");
  require_square(q, "Q");
  if (p.rows() != q.rows()) throw Error(ErrorKind::DimMismatch, "P and Q differ in dimension");
  if (!all_finite(p) || !all_finite(q)) throw Error(ErrorKind::InvalidArgument, "non-finite matrix entry");
  for (const auto& [m, name] : {std::pair{&p, "P"}, std::pair{&q, "Q"}}) {
    const double res = spectral_norm(*m * *m - *m);
    if (res > tol.atol) {
      std::ostringstream os;
      os << name << " is not idempotent: residual " << res;
      throw Error(ErrorKind::NotIdempotent, os.str());
    }
  }
  return IdempotentPair(p, q);
}

IdempotentPair rank_one_skew_pair() {
  CMatrix p(2, 2), q(2, 2);
  p << 0.0, -1.0, 0.0, 1.0;
  q << 1.0, 2.0, 0.0, 0.0;
  return make_idempotent_pair(p, q, Tolerance{});
}

InvertibilityReport invertibility_conditions(const IdempotentPair& pair, const Tolerance& tol) {
  const Index n = pair.dim();
  const CMatrix id = identity(n);
  const CMatrix a2 = pair.A() * pair.A();

  InvertibilityReport rep;
  InvertibilityMargins& m = rep.margins;
  m.sigma_min_b = smallest_singular_value(pair.B());
  m.sigma_min_one_minus_a2 = smallest_singular_value(id - a2);
  m.sigma_min_p2q_minus_i = smallest_singular_value(pair.P() + 2.0 * pair.Q() - id);
  m.sigma_min_p2q_minus_2i = smallest_singular_value(pair.P() + 2.0 * pair.Q() - 2.0 * id);
  const Eigen::ComplexEigenSolver<CMatrix> es(a2, false);
  m.eig_distance_a2_to_one = (es.eigenvalues().array() - Complex(1.0, 0.0)).abs().minCoeff();

  rep.b_invertible = m.sigma_min_b > tol.rank_tol;
  rep.one_not_in_spec_a2 = m.eig_distance_a2_to_one > tol.rank_tol;
  rep.p2q_minus_i_invertible = m.sigma_min_p2q_minus_i > tol.rank_tol;
  rep.p2q_minus_2i_invertible = m.sigma_min_p2q_minus_2i > tol.rank_tol;
  rep.consistent = rep.b_invertible == rep.one_not_in_spec_a2 && rep.b_invertible == rep.shifted_sums_invertible();
  return rep;
}

namespace {

void add_similarity_residuals(Similarity& s, const IdempotentPair& pair, const Tolerance& tol) {
  const CMatrix inv = s.V.fullPivLu().inverse();
  const double bound = 100.0 * tol.atol * s.condition;
  s.report.tolerance_used = tol;
  s.report.add("VPV^-1-Q", spectral_norm(s.V * pair.P() * inv - pair.Q()), bound);
  s.report.add("VQV^-1-P", spectral_norm(s.V * pair.Q() * inv - pair.P()), bound);
}

}  // namespace

Similarity conjugate_by_b(const IdempotentPair& pair, const Tolerance& tol) {
  const double smin = smallest_singular_value(pair.B());
  if (smin <= tol.rank_tol) {
    std::ostringstream os;
    os << "B has smallest singular value " << smin;
    throw Error(ErrorKind::Singular, os.str());
  }
  Similarity s;
  s.V = pair.B();
  s.condition = condition_number(s.V);
  add_similarity_residuals(s, pair, tol);
  return s;
}

Similarity sqrt_similarity(const IdempotentPair& pair, const Tolerance& tol) {
  const Index n = pair.dim();
  const CMatrix id = identity(n);
  const CMatrix a2 = pair.A() * pair.A();
  const Eigen::ComplexEigenSolver<CMatrix> es(a2, true);
  const CVector& lambda = es.eigenvalues();
  const CMatrix& x = es.eigenvectors();

  for (Index k = 0; k < n; ++k) {
    if (lambda(k).real() >= 1.0 - tol.rank_tol && std::abs(lambda(k).imag()) <= tol.rank_tol) {
      std::ostringstream os;
      os << "eigenvalue " << lambda(k) << " of A^2 lies on the branch cut [1, inf)";
      throw Error(ErrorKind::SpectrumOnCut, os.str());
    }
  }
  const double cond_x = condition_number(x);
  if (!(cond_x <= 1e6)) {
    std::ostringstream os;
    os << "eigenvector matrix of A^2 has condition number " << cond_x;
    throw Error(ErrorKind::NotDiagonalizable, os.str());
  }
  CVector d(n);
  for (Index k = 0; k < n; ++k) d(k) = 1.0 / std::sqrt(Complex(1.0, 0.0) - lambda(k));
  const CMatrix c = x * d.asDiagonal() * x.inverse();

  Similarity s;
  s.V = c * pair.B();
  s.condition = condition_number(s.V);
  if (!std::isfinite(s.condition)) throw Error(ErrorKind::Singular, "normalized similarity is singular");
  add_similarity_residuals(s, pair, tol);
  const double bound = 100.0 * tol.atol * s.condition;
  s.report.add("V^2-I", spectral_norm(s.V * s.V - id), bound);
  const CMatrix one_minus_a2 = id - a2;
  s.report.add("[V,I-A^2]", spectral_norm(s.V * one_minus_a2 - one_minus_a2 * s.V),
               tol.atol * s.condition * std::max(1.0, spectral_norm(one_minus_a2)));
  return s;
}

Index numerical_rank(const CMatrix& m, const Tolerance& tol) {
  const RVector s = Eigen::JacobiSVD<CMatrix>(m).singularValues();
  return static_cast<Index>((s.array() > tol.rank_tol).count());
}

namespace {

// [orthonormal basis of ran M | orthonormal basis of ker M]
std::pair<CMatrix, Index> range_kernel_basis(const CMatrix& m, const Tolerance& tol) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Index n = m.rows();
  const Index r = static_cast<Index>((svd.singularValues().array() > tol.rank_tol).count());
  CMatrix basis(n, n);
  basis.leftCols(r) = svd.matrixU().leftCols(r);
  basis.rightCols(n - r) = svd.matrixV().rightCols(n - r);
  return {basis, r};
}

}  // namespace

Similarity rank_matching_similarity(const IdempotentPair& pair, const Tolerance& tol) {
  const auto [f, rank_p] = range_kernel_basis(pair.P(), tol);
  const auto [e, rank_q] = range_kernel_basis(pair.Q(), tol);
  if (rank_p != rank_q) {
    std::ostringstream os;
    os << "rank P = " << rank_p << " but rank Q = " << rank_q;
    throw Error(ErrorKind::RankMismatch, os.str());
  }
  Similarity s;
  s.V = e * f.fullPivLu().inverse();
  s.condition = condition_number(s.V);
  s.report.tolerance_used = tol;
  s.report.add("VP-QV", spectral_norm(s.V * pair.P() - pair.Q() * s.V), 100.0 * tol.atol * s.condition);
  s.report.add("condition", s.condition, condition_number(e) * condition_number(f) * (1.0 + 1e-8));
  return s;
}

std::pair<CMatrix, CMatrix> two_by_two_family(Complex c, Complex b) {
  CMatrix v(2, 2), vt(2, 2);
  v << -2.0 * c, b, c, c;
  vt << -c, b, c, 2.0 * c;
  return {v, vt};
}

}  // namespace twoproj
