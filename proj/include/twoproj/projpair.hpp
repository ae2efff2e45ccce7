#pragma once

#include <string>
#include <utility>
#include <vector>

#include "twoproj/matcore.hpp"

namespace twoproj {

/// One named residual and the bound it is compared against.
struct Residual {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool ok() const { return value <= bound; }
};

struct VerificationReport {
  std::vector<Residual> residuals;
  bool verdict = true;
  Tolerance tolerance_used;

  void add(std::string name, double value, double bound);
  const Residual* find(std::string_view name) const;
};

/// Pair of orthogonal projections with cached A = P - Q and B = I - P - Q.
/// Only obtainable through make_orth_pair, so every instance is validated.
class OrthProjPair {
 public:
  const CMatrix& P() const { return p_; }
  const CMatrix& Q() const { return q_; }
  const CMatrix& A() const { return a_; }
  const CMatrix& B() const { return b_; }
  Index dim() const { return p_.rows(); }

 private:
  friend OrthProjPair make_orth_pair(const CMatrix&, const CMatrix&, const Tolerance&);
  OrthProjPair(CMatrix p, CMatrix q);

  CMatrix p_, q_, a_, b_;
};

/// Validates P^2 = P = P* and Q^2 = Q = Q* within atol. Never repairs input.
/// Throws NotSquare, DimMismatch, NotHermitian, NotProjection.
OrthProjPair make_orth_pair(const CMatrix& p, const CMatrix& q, const Tolerance& tol);
OrthProjPair make_orth_pair(const CMatrix& p, const CMatrix& q);

/// Default tolerance for a pair of (possibly skew) matrices, scaled by
/// max(||P||, ||Q||).
Tolerance default_tolerance(const CMatrix& p, const CMatrix& q);

/// Residuals ||P^2 - P||, ||Q^2 - Q|| and, when `hermitian` is set,
/// ||P - P*||, ||Q - Q*||, without throwing. Shapes must agree.
VerificationReport projection_residuals(const CMatrix& p, const CMatrix& q, bool hermitian,
                                        const Tolerance& tol);

/// ||A|| as the largest absolute eigenvalue of the hermitian A.
double difference_norm(const OrthProjPair& pair, const Tolerance& tol);

/// (I - A^2)^{-1/2} B: hermitian, unitary, squares to I and swaps P and Q.
/// Requires ||A|| < 1 - rank_tol, else NormTooLarge.
CMatrix kato_unitary(const OrthProjPair& pair, const Tolerance& tol);

/// Raw pair V = PQ + (I-P)(I-Q), V~ = QP + (I-Q)(I-P) with V V~ = I - A^2;
/// the normalized pair is multiplied by (I - A^2)^{-1/2} and satisfies
/// V V~ = I. NormTooLarge applies to the normalized form only.
std::pair<CMatrix, CMatrix> kato_pair_vw(const OrthProjPair& pair, bool normalized,
                                         const Tolerance& tol);

/// Residuals ||A^2 + B^2 - I|| and ||AB + BA||.
VerificationReport verify_supersymmetry(const OrthProjPair& pair, const Tolerance& tol);
/// Same identities for unvalidated matrices, e.g. a perturbed pair.
VerificationReport verify_supersymmetry(const CMatrix& p, const CMatrix& q, const Tolerance& tol);

}  // namespace twoproj
