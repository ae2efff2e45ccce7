#pragma once

// Unitaries U with U P U* = Q and U Q U* = P.
//
// Block layout in the Halmos frame: U0 on M00, U1 on M11, and on
// M01 + M10 (in that order) the anti-diagonal block
//     [ 0    U10 ]
//     [ U01  0   ]
// so U10 (d01 x d10) carries M10 into M01 and U01 (d10 x d01) carries M01
// into M10. The generic part is Wb* (V + V) R Wb with
// R = [sqrt(H), sqrt(I-H); sqrt(I-H), -sqrt(H)] and V commuting with H.

#include <cstdint>
#include <optional>
#include <vector>

#include "twoproj/halmos.hpp"
#include "twoproj/matcore.hpp"
#include "twoproj/projpair.hpp"

namespace twoproj {

struct IntertwinerParams {
  CMatrix U0;   // d00 x d00
  CMatrix U1;   // d11 x d11
  CMatrix U10;  // d01 x d10, upper-right block
  CMatrix U01;  // d10 x d01, lower-left block
  CMatrix V;    // dM x dM; commutes with H (Halmos form) or with a (supersymmetric form)
};

/// A = Y diag(a, -a) Y*, B = Y [0, sqrt(I-a^2); sqrt(I-a^2), 0] Y* on the
/// generic part. Y is an n x 2k isometry (unitary when the pair is generic),
/// a is k x k diagonal with ascending entries in (0, 1).
struct SusyCanonicalForm {
  CMatrix Y;
  CMatrix a;
  RVector a_values;
  std::vector<EigenCluster> clusters;
};

/// All-identity parameters (S = I for the swap blocks, V = I).
IntertwinerParams identity_params(const HalmosDecomposition& dec);
/// Haar unitaries on every corner block; V is a Haar unitary on each
/// eigenvalue cluster of H.
IntertwinerParams random_params(const HalmosDecomposition& dec, std::uint64_t seed);
/// V = phi(H) from one sample per eigenvalue cluster of H.
CMatrix function_of_h(const HalmosDecomposition& dec, const std::vector<Complex>& samples);

/// Basic swap: identities on M00 and M11, swap via S (M10 -> M01)
/// and S*, generic rotation R. Throws DimMismatch when d01 != d10 or S has
/// the wrong shape; NotUnitary for a non-unitary S.
CMatrix wdd_unitary(const HalmosDecomposition& dec, const CMatrix& s, const Tolerance& tol);

/// Spectral sgn(B). Requires d01 = d10 = 0; throws NotInjective if an
/// eigenvalue of B lies within rank_tol of zero.
CMatrix sgn_b(const OrthProjPair& pair, const HalmosDecomposition& dec, const Tolerance& tol);

/// Canonical form for a pair in generic position. Throws NotGeneric when A
/// or B has an eigenvalue within rank_tol of zero.
SusyCanonicalForm susy_canonical(const OrthProjPair& pair, const Tolerance& tol);
/// Canonical form of the restriction of the pair to the generic part of `dec`.
SusyCanonicalForm susy_canonical(const OrthProjPair& pair, const HalmosDecomposition& dec,
                                 const Tolerance& tol);

/// Residuals of the two defining identities of `canon` against the pair.
VerificationReport verify_susy_canonical(const OrthProjPair& pair, const HalmosDecomposition& dec,
                                         const SusyCanonicalForm& canon, const Tolerance& tol);

/// Halmos-form family member. Throws DimMismatch, NotUnitary, NotCommuting.
CMatrix general_unitary_halmos(const HalmosDecomposition& dec, const IntertwinerParams& params,
                               const Tolerance& tol);

/// Supersymmetric-form family member: corners from `dec`, generic part
/// Y [0, v; v, 0] Y* with v = params.V commuting with a.
CMatrix general_unitary_susy(const HalmosDecomposition& dec, const SusyCanonicalForm& canon,
                             const IntertwinerParams& params, const Tolerance& tol);

/// Residuals ||U*U - I||, ||UP - QU||, ||UQ - PU||, each bounded by atol.
VerificationReport verify_symmetric_intertwiner(const OrthProjPair& pair, const CMatrix& u,
                                                const Tolerance& tol);

struct Factorization {
  CMatrix C;
  VerificationReport report;  // commutation of C with P and Q
};

/// C = V V0^{-1}; reports ||CP - PC|| and ||CQ - QC|| against
/// atol max(1, ||C||) cond(V0). Throws Singular when V0 is not invertible.
Factorization factor_through(const CMatrix& v, const CMatrix& v0, const CMatrix& p,
                             const CMatrix& q, const Tolerance& tol);

enum class Relation {
  one_sided,  // ZP = QZ
  symmetric,  // ZP = QZ and ZQ = PZ
};

/// Brute-force oracle: orthonormal (Frobenius) basis of the solution space
/// of the chosen intertwining relation, from the null space of the
/// vectorized linear map, singular values <= rank_tol * sigma_max dropped.
std::vector<CMatrix> oracle_intertwiner_space(const CMatrix& p, const CMatrix& q,
                                              const Tolerance& tol,
                                              Relation relation = Relation::symmetric);

}  // namespace twoproj
