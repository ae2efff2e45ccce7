#include "twoproj/projpair.hpp"

#include <algorithm>
#include <sstream>

namespace twoproj {

void VerificationReport::add(std::string name, double value, double bound) {
  residuals.push_back({std::move(name), value, bound});
  verdict = verdict && residuals.back().ok();
}

const Residual* VerificationReport::find(std::string_view name) const {
  for (const auto& r : residuals)
    if (r.name == name) return &r;
  return nullptr;
}

OrthProjPair::OrthProjPair(CMatrix p, CMatrix q) : p_(std::move(p)), q_(std::move(q)) {
  const CMatrix id = identity(p_.rows());
  a_ = p_ - q_;
  b_ = id - p_ - q_;
}

Tolerance default_tolerance(const CMatrix& p, const CMatrix& q) {
  return Tolerance::scaled(std::max(spectral_norm(p), spectral_norm(q)));
}

namespace {

void check_projection(const CMatrix& m, const char* name, const Tolerance& tol) {
  const double herm = spectral_norm(m - m.adjoint());
  if (herm > tol.atol) {
    std::ostringstream os;
    os << name << " is not hermitian: ||" << name << " - " << name << "*|| = " << herm;
    throw Error(ErrorKind::NotHermitian, os.str());
  }
  const double idem = spectral_norm(m * m - m);
  if (idem > tol.atol) {
    std::ostringstream os;
    os << name << " is not idempotent: ||" << name << "^2 - " << name << "|| = " << idem;
    throw Error(ErrorKind::NotProjection, os.str());
  }
}

}  // namespace

OrthProjPair make_orth_pair(const CMatrix& p, const CMatrix& q, const Tolerance& tol) {
  tol.validate();
  require_square(p, "P");
  require_square(q, "Q");
  if (p.rows() != q.rows()) {
    std::ostringstream os;
    os << "P is " << p.rows() << "x" << p.cols() << " but Q is " << q.rows() << "x" << q.cols();
    throw Error(ErrorKind::DimMismatch, os.str());
  }
  if (!all_finite(p) || !all_finite(q))
    throw Error(ErrorKind::InvalidArgument, "non-finite matrix entry");
  check_projection(p, "P", tol);
  check_projection(q, "Q", tol);
  return OrthProjPair(p, q);
}

OrthProjPair make_orth_pair(const CMatrix& p, const CMatrix& q) {
  return make_orth_pair(p, q, Tolerance{});
}

VerificationReport projection_residuals(const CMatrix& p, const CMatrix& q, bool hermitian,
                                        const Tolerance& tol) {
  require_square(p, "P");
  if (q.rows() != p.rows() || q.cols() != p.cols())
    throw Error(ErrorKind::DimMismatch, "P and Q differ in shape");
  VerificationReport rep;
  rep.tolerance_used = tol;
  rep.add("P^2-P", spectral_norm(p * p - p), tol.atol);
  rep.add("Q^2-Q", spectral_norm(q * q - q), tol.atol);
  if (hermitian) {
    rep.add("P-P*", spectral_norm(p - p.adjoint()), tol.atol);
    rep.add("Q-Q*", spectral_norm(q - q.adjoint()), tol.atol);
  }
  return rep;
}

double difference_norm(const OrthProjPair& pair, const Tolerance& tol) {
  return herm_eig(pair.A(), tol).values.cwiseAbs().maxCoeff();
}

namespace {

CMatrix inverse_sqrt_of_one_minus_a2(const OrthProjPair& pair, const Tolerance& tol) {
  const double norm_a = difference_norm(pair, tol);
  if (norm_a >= 1.0 - tol.rank_tol) {
    std::ostringstream os;
    os << "||P - Q|| = " << norm_a << " is not below 1 - rank_tol";
    throw Error(ErrorKind::NormTooLarge, os.str());
  }
  const CMatrix one_minus_a2 = identity(pair.dim()) - pair.A() * pair.A();
  return matfun_hermitian(0.5 * (one_minus_a2 + one_minus_a2.adjoint()),
                          SpectralFunction::inverse_sqrt(), tol);
}

}  // namespace

CMatrix kato_unitary(const OrthProjPair& pair, const Tolerance& tol) {
  return inverse_sqrt_of_one_minus_a2(pair, tol) * pair.B();
}

std::pair<CMatrix, CMatrix> kato_pair_vw(const OrthProjPair& pair, bool normalized,
                                         const Tolerance& tol) {
  const CMatrix id = identity(pair.dim());
  const CMatrix& p = pair.P();
  const CMatrix& q = pair.Q();
  CMatrix v = p * q + (id - p) * (id - q);
  CMatrix vt = q * p + (id - q) * (id - p);
  if (normalized) {
    const CMatrix c = inverse_sqrt_of_one_minus_a2(pair, tol);
    v = (c * v).eval();
    vt = (c * vt).eval();
  }
  return {std::move(v), std::move(vt)};
}

VerificationReport verify_supersymmetry(const CMatrix& p, const CMatrix& q, const Tolerance& tol) {
  require_square(p, "P");
  if (q.rows() != p.rows() || q.cols() != p.cols())
    throw Error(ErrorKind::DimMismatch, "P and Q differ in shape");
  const CMatrix id = identity(p.rows());
  const CMatrix a = p - q;
  const CMatrix b = id - p - q;
  VerificationReport rep;
  rep.tolerance_used = tol;
  rep.add("pythagoras", spectral_norm(a * a + b * b - id), tol.atol);
  rep.add("anticommutator", spectral_norm(a * b + b * a), tol.atol);
  return rep;
}

VerificationReport verify_supersymmetry(const OrthProjPair& pair, const Tolerance& tol) {
  return verify_supersymmetry(pair.P(), pair.Q(), tol);
}

}  // namespace twoproj
