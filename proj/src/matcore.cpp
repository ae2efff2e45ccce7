#include "twoproj/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace twoproj {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotProjection: return "NotProjection";
    case ErrorKind::NotIdempotent: return "NotIdempotent";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::BadRank: return "BadRank";
    case ErrorKind::NormTooLarge: return "NormTooLarge";
    case ErrorKind::InconsistentDims: return "InconsistentDims";
    case ErrorKind::NotInjective: return "NotInjective";
    case ErrorKind::NotGeneric: return "NotGeneric";
    case ErrorKind::NotCommuting: return "NotCommuting";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::SpectrumOnCut: return "SpectrumOnCut";
    case ErrorKind::NotDiagonalizable: return "NotDiagonalizable";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DimensionError: return "DimensionError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

Tolerance Tolerance::scaled(double norm) {
  const double s = std::max(1.0, norm);
  return {1e-10 * s, 1e-8 * s};
}

void Tolerance::validate() const {
  if (!(atol > 0.0) || !(rank_tol > 0.0) || !std::isfinite(atol) || !std::isfinite(rank_tol)) {
    throw Error(ErrorKind::InvalidArgument, "tolerances must be positive and finite");
  }
}

SpectralFunction SpectralFunction::identity() {
  return {[](double x) { return Complex(x, 0.0); }, [](double, double) { return true; }, true};
}

SpectralFunction SpectralFunction::sqrt() {
  return {[](double x) { return Complex(std::sqrt(std::max(x, 0.0)), 0.0); },
          [](double x, double rt) { return x >= -rt; }, true};
}

SpectralFunction SpectralFunction::inverse_sqrt() {
  return {[](double x) { return Complex(1.0 / std::sqrt(x), 0.0); },
          [](double x, double rt) { return x > rt; }, true};
}

SpectralFunction SpectralFunction::sign() {
  return {[](double x) { return Complex(x > 0.0 ? 1.0 : -1.0, 0.0); },
          [](double x, double rt) { return std::abs(x) > rt; }, true};
}

SpectralFunction SpectralFunction::real(std::function<double(double)> f) {
  return {[f = std::move(f)](double x) { return Complex(f(x), 0.0); },
          [](double, double) { return true; }, true};
}

SpectralFunction SpectralFunction::complex(std::function<Complex(double)> f) {
  return {std::move(f), [](double, double) { return true; }, false};
}

CMatrix identity(Index n) { return CMatrix::Identity(n, n); }

bool all_finite(const CMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

namespace {

RVector singular_values(const CMatrix& m) {
  if (m.size() == 0) return RVector();
  return Eigen::BDCSVD<CMatrix>(m).singularValues();
}

}  // namespace

double spectral_norm(const CMatrix& m) {
  const RVector s = singular_values(m);
  return s.size() == 0 ? 0.0 : s(0);
}

double smallest_singular_value(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() != m.cols()) {
    const RVector s = singular_values(m);
    return m.rows() < m.cols() ? 0.0 : s(s.size() - 1);
  }
  const RVector s = singular_values(m);
  return s(s.size() - 1);
}

double condition_number(const CMatrix& m) {
  const RVector s = singular_values(m);
  if (s.size() == 0) return 1.0;
  const double lo = s(s.size() - 1);
  if (lo == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / lo;
}

void require_square(const CMatrix& m, std::string_view what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << what << " must be a nonempty square matrix, got " << m.rows() << "x" << m.cols();
    throw Error(ErrorKind::NotSquare, os.str());
  }
}

EigenSystem herm_eig(const CMatrix& m, const Tolerance& tol) {
  require_square(m, "herm_eig input");
  const double scale = std::max(1.0, spectral_norm(m));
  const double asym = spectral_norm(m - m.adjoint());
  if (asym > tol.atol * scale) {
    std::ostringstream os;
    os << "symmetry residual " << asym << " exceeds " << tol.atol * scale;
    throw Error(ErrorKind::NotHermitian, os.str());
  }
  const CMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

std::vector<EigenCluster> cluster_eigenvalues(const RVector& ascending, double gap) {
  std::vector<EigenCluster> out;
  Index i = 0;
  while (i < ascending.size()) {
    Index j = i + 1;
    while (j < ascending.size() && ascending(j) - ascending(j - 1) <= gap) ++j;
    out.push_back({i, j - i, ascending.segment(i, j - i).mean()});
    i = j;
  }
  return out;
}

RVector snap_to_clusters(const RVector& ascending, const std::vector<EigenCluster>& clusters) {
  RVector out = ascending;
  for (const auto& c : clusters) out.segment(c.begin, c.size).setConstant(c.center);
  return out;
}

CMatrix matfun_hermitian(const CMatrix& m, const SpectralFunction& f, const Tolerance& tol) {
  const EigenSystem es = herm_eig(m, tol);
  CVector fv(es.values.size());
  for (Index k = 0; k < es.values.size(); ++k) {
    const double lam = es.values(k);
    if (!f.defined_at(lam, tol.rank_tol)) {
      std::ostringstream os;
      os << "function undefined at eigenvalue " << lam;
      throw Error(ErrorKind::DomainError, os.str());
    }
    fv(k) = f.value(lam);
  }
  CMatrix out = es.vectors * fv.asDiagonal() * es.vectors.adjoint();
  if (f.real_valued) out = 0.5 * (out + out.adjoint()).eval();
  return out;
}

CMatrix polar_unitary(const CMatrix& m, const Tolerance& tol) {
  require_square(m, "polar_unitary input");
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  if (s(s.size() - 1) <= tol.rank_tol) {
    std::ostringstream os;
    os << "smallest singular value " << s(s.size() - 1) << " <= rank_tol " << tol.rank_tol;
    throw Error(ErrorKind::Singular, os.str());
  }
  return svd.matrixU() * svd.matrixV().adjoint();
}

CMatrix orthonormalize(const CMatrix& m) {
  if (m.cols() == 0) return m;
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

void phase_fix_columns(CMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      const double mag = std::abs(m(i, j));
      if (mag > 1e-8) {
        m.col(j) *= std::conj(m(i, j)) / mag;
        m(i, j) = Complex(std::abs(m(i, j)), 0.0);
        break;
      }
    }
  }
}

CMatrix nullspace(const CMatrix& map, double rel_tol) {
  const Index n = map.cols();
  if (n == 0) return CMatrix(0, 0);
  if (map.rows() == 0) return identity(n);
  Eigen::JacobiSVD<CMatrix> svd(map, Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  const double cut = rel_tol * (s.size() > 0 ? s(0) : 0.0);
  Index rank = 0;
  for (Index k = 0; k < s.size(); ++k)
    if (s(k) > cut) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

}  // namespace twoproj
