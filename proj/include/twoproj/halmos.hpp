#pragma once

// Five-part canonical decomposition of a pair of orthogonal projections.
//
// With L = ran P and N = ran Q the space splits into
//   M00 = L n N,   M01 = L n N^perp,   M10 = N n L^perp,   M11 = L^perp n N^perp,
//   M  = L (-) (M00 + M01),   M' = L^perp (-) (M10 + M11),
// and in the frame [M00 | M01 | M10 | M11 | M | M'] the pair reads
//   P = I + I + 0 + 0 + Wb* [I 0; 0 0] Wb
//   Q = I + 0 + I + 0 + Wb* [H, sqrt(H(I-H)); sqrt(H(I-H)), I-H] Wb
// with Wb = diag(I, W) and H the compression of PQP to M.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "twoproj/matcore.hpp"
#include "twoproj/projpair.hpp"
#include "twoproj/random.hpp"

namespace twoproj {

struct SubspaceDims {
  Index d00 = 0, d01 = 0, d10 = 0, d11 = 0, dM = 0;

  Index total() const { return d00 + d01 + d10 + d11 + 2 * dM; }
  Index rank_p() const { return d00 + d01 + dM; }
  Index rank_q() const { return d00 + d10 + dM; }
  bool generic() const { return d00 == 0 && d01 == 0 && d10 == 0 && d11 == 0; }
  friend bool operator==(const SubspaceDims&, const SubspaceDims&) = default;
};

struct HalmosDecomposition {
  Index dim = 0;
  // n x d orthonormal column sets
  CMatrix basis00, basis01, basis10, basis11, basisM, basisMprime;
  // dM x dM gauge between M-coordinates and M'-coordinates
  CMatrix W;
  // compression of PQP to basisM; diagonal because basisM is its eigenbasis
  CMatrix H;
  RVector h;                          // eigenvalues of H, ascending, in (rank_tol, 1 - rank_tol)
  std::vector<EigenCluster> clusters;  // clusters of h at gap rank_tol
  SubspaceDims dims;
  Tolerance tol;

  /// Column concatenation [basis00 basis01 basis10 basis11 basisM basisMprime].
  CMatrix frame() const;
  /// [basisM basisMprime], an n x 2dM isometry onto the generic part.
  CMatrix generic_frame() const;
  /// Wb = diag(I, W).
  CMatrix gauge() const;
  /// H with each eigenvalue replaced by its cluster mean.
  CMatrix snapped_H() const;
};

HalmosDecomposition halmos_decompose(const OrthProjPair& pair, const Tolerance& tol);

/// Reassembles (P, Q) from the blocks. Throws InconsistentDims.
std::pair<CMatrix, CMatrix> reconstruct(const HalmosDecomposition& dec);

/// d01 == d10: a unitary swapping P and Q exists.
bool exists_symmetric_unitary(const HalmosDecomposition& dec);

/// Dimension of the commutant {Z : ZP = PZ, ZQ = QZ}:
/// d00^2 + d01^2 + d10^2 + d11^2 + sum of squared cluster multiplicities of H.
Index commutant_dim(const HalmosDecomposition& dec, const Tolerance& tol);

/// Maps an operator X on the 2dM-dimensional generic coordinates to the
/// ambient space: G Wb* X Wb G*.
CMatrix embed_generic(const HalmosDecomposition& dec, const CMatrix& x);
/// Inverse of embed_generic on operators supported by the generic part.
CMatrix generic_coordinates(const HalmosDecomposition& dec, const CMatrix& t);

/// The block [sqrt(H), sqrt(I-H); sqrt(I-H), -sqrt(H)] in generic coordinates.
CMatrix generic_rotation(const HalmosDecomposition& dec);

/// Builds the pair whose decomposition has the given dimensions and
/// generic eigenvalues `h` (size dims.dM, each in (0,1)), expressed in the
/// orthonormal frame `frame` (n x n unitary, columns ordered as in frame()).
OrthProjPair pair_from_structure(const SubspaceDims& dims, std::span<const double> h,
                                 const CMatrix& frame, const Tolerance& tol);

/// Haar frame, h uniform in [0.05, 0.95]. Lets tests force nonzero corners.
OrthProjPair random_structured_pair(const SubspaceDims& dims, std::uint64_t seed);
/// Same with prescribed generic eigenvalues.
OrthProjPair random_structured_pair(const SubspaceDims& dims, std::span<const double> h,
                                    std::uint64_t seed);

}  // namespace twoproj
