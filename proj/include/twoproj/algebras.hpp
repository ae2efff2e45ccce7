#pragma once

// The von Neumann algebra A(P,Q) generated by two orthogonal projections.
//
// In the Halmos frame its elements are
//   a00 I + a01 I + a10 I + a11 I + Wb* [phi00(H) phi01(H); phi10(H) phi11(H)] Wb
// with scalars a_ij and functions phi_ij of H. In finite dimension a
// function of H is an operator that is scalar on every eigenvalue cluster
// of H, so phi_ij is stored as one sample per cluster.
//
// The C*-algebra B(P,Q) adds continuity and six boundary conditions at the
// points 0 and 1 of the spectrum of H. Here the spectrum is a finite set of
// eigenvalues strictly inside (0,1), so continuity is automatic and the
// boundary conditions are vacuous: a unitary exists in B(P,Q) exactly when
// one exists in A(P,Q).

#include <array>
#include <optional>
#include <vector>

#include "twoproj/halmos.hpp"
#include "twoproj/projpair.hpp"

namespace twoproj {

struct WstarForm {
  // present iff the corresponding subspace is nonzero
  std::optional<Complex> a00, a01, a10, a11;
  // one entry per eigenvalue cluster of H: {phi00, phi01, phi10, phi11}
  std::vector<std::array<Complex, 4>> phi;
};

struct WstarExtraction {
  WstarForm form;
  double residual = 0.0;  // ||T - assemble(form)||
};

/// Best fit of T by an element of A(P,Q) in the given decomposition.
WstarExtraction extract_wstar(const CMatrix& t, const HalmosDecomposition& dec);

/// The extracted form iff T lies in A(P,Q), i.e. the extraction residual is
/// <= atol max(1, ||T||).
std::optional<WstarForm> membership_in_wstar(const CMatrix& t, const HalmosDecomposition& dec,
                                             const Tolerance& tol);

/// Ambient operator of a form. Throws InconsistentDims on a shape mismatch.
CMatrix assemble(const WstarForm& form, const HalmosDecomposition& dec);

struct UnimodularParams {
  // Phase on M00 / M11. Must be absent when the subspace is zero; treated as
  // 1 when absent for a nonzero subspace.
  std::optional<Complex> a0, a1;
  std::vector<Complex> phi;  // one unimodular sample per eigenvalue cluster of H
};

/// d01 == 0 and d10 == 0.
bool exists_unitary_in_wstar(const HalmosDecomposition& dec);

/// a0 I + a1 I + Wb* (phi(H) + phi(H)) R Wb.
/// Throws NotApplicable (corners M01/M10 present, or a phase for a zero
/// subspace), NotUnimodular, DimMismatch.
CMatrix wstar_unitary(const HalmosDecomposition& dec, const UnimodularParams& params,
                      const Tolerance& tol);

/// P + Q - I invertible (smallest singular value > rank_tol). Throws
/// InconsistentDims if the answer disagrees with exists_unitary_in_wstar.
bool exists_unitary_in_cstar(const OrthProjPair& pair, const HalmosDecomposition& dec,
                             const Tolerance& tol);

/// Generic position and every eigenvalue cluster of H a singleton.
bool simple_spectrum_all_in(const HalmosDecomposition& dec, const Tolerance& tol);

}  // namespace twoproj
