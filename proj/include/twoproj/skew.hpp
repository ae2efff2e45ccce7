#pragma once

// Similarity for idempotents that need not be selfadjoint.

#include <utility>

#include "twoproj/matcore.hpp"
#include "twoproj/projpair.hpp"

namespace twoproj {

class IdempotentPair {
 public:
  const CMatrix& P() const { return p_; }
  const CMatrix& Q() const { return q_; }
  const CMatrix& A() const { return a_; }
  const CMatrix& B() const { return b_; }
  Index dim() const { return p_.rows(); }

 private:
  friend IdempotentPair make_idempotent_pair(const CMatrix&, const CMatrix&, const Tolerance&);
  IdempotentPair(CMatrix p, CMatrix q);

  CMatrix p_, q_, a_, b_;
};

/// Validates P^2 = P and Q^2 = Q within atol (hermitianity not required).
/// Throws NotSquare, DimMismatch, NotIdempotent.
IdempotentPair make_idempotent_pair(const CMatrix& p, const CMatrix& q, const Tolerance& tol);

/// The rank-one pair P = [0 -1; 0 1], Q = [1 2; 0 0]: similar, but with no
/// unitary similarity and no invertible V swapping both ways.
IdempotentPair rank_one_skew_pair();

struct InvertibilityMargins {
  double sigma_min_b = 0.0;             // B = I - P - Q
  double sigma_min_one_minus_a2 = 0.0;  // I - A^2
  double sigma_min_p2q_minus_i = 0.0;   // P + 2Q - I
  double sigma_min_p2q_minus_2i = 0.0;  // P + 2Q - 2I
  double eig_distance_a2_to_one = 0.0;  // min_k |1 - lambda_k(A^2)|
};

/// Decisions for the equivalent invertibility conditions
///   B invertible; 1 not an eigenvalue of A^2;
///   P + 2Q - I and P + 2Q - 2I both invertible.
struct InvertibilityReport {
  bool b_invertible = false;
  bool one_not_in_spec_a2 = false;
  bool p2q_minus_i_invertible = false;
  bool p2q_minus_2i_invertible = false;
  bool consistent = false;  // the three verdicts coincide
  InvertibilityMargins margins;

  bool shifted_sums_invertible() const { return p2q_minus_i_invertible && p2q_minus_2i_invertible; }
  bool all_true() const { return b_invertible && one_not_in_spec_a2 && shifted_sums_invertible(); }
  bool all_false() const { return !b_invertible && !one_not_in_spec_a2 && !shifted_sums_invertible(); }
};

InvertibilityReport invertibility_conditions(const IdempotentPair& pair, const Tolerance& tol);

/// An invertible V with VP = QV, plus the residuals that certify it.
struct Similarity {
  CMatrix V;
  double condition = 1.0;
  VerificationReport report;
};

/// V = B, for which B P B^{-1} = Q and B Q B^{-1} = P. Throws Singular.
Similarity conjugate_by_b(const IdempotentPair& pair, const Tolerance& tol);

/// V = (I - A^2)^{-1/2} B through the principal branch of (1 - lambda)^{-1/2}
/// on a diagonalization of A^2; V^2 = I and V swaps P and Q.
/// Throws SpectrumOnCut, NotDiagonalizable, Singular.
Similarity sqrt_similarity(const IdempotentPair& pair, const Tolerance& tol);

/// Maps an orthonormal basis of ran P onto one of ran Q and an orthonormal
/// basis of ker P onto one of ker Q, so that VP = QV. Throws RankMismatch.
Similarity rank_matching_similarity(const IdempotentPair& pair, const Tolerance& tol);

/// Numerical rank from singular values above rank_tol.
Index numerical_rank(const CMatrix& m, const Tolerance& tol);

/// All 2x2 solutions of VP = QV and V~Q = PV~ for the rank-one skew pair:
/// V = [-2c b; c c], V~ = [-c b; c 2c].
std::pair<CMatrix, CMatrix> two_by_two_family(Complex c, Complex b);

}  // namespace twoproj
