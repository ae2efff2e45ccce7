#pragma once

// Shared matrices and helpers for the test binaries.

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

#include "twoproj/halmos.hpp"
#include "twoproj/matcore.hpp"
#include "twoproj/projpair.hpp"
#include "twoproj/random.hpp"

namespace fixtures {

using twoproj::CMatrix;
using twoproj::Complex;
using twoproj::Index;

inline const double kSqrt3 = std::sqrt(3.0);

inline CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline CMatrix diag2(Complex a, Complex b) { return mat2(a, 0.0, 0.0, b); }

inline double dist(const CMatrix& a, const CMatrix& b) { return twoproj::spectral_norm(a - b); }

// P = Q = diag(1,0)
inline std::pair<CMatrix, CMatrix> equal_mats() { return {diag2(1, 0), diag2(1, 0)}; }
// P = diag(1,0), Q = diag(0,1)
inline std::pair<CMatrix, CMatrix> complementary_mats() { return {diag2(1, 0), diag2(0, 1)}; }
// P = diag(1,0), Q the projection onto (1/2, sqrt(3)/2); cos^2 of the angle is 1/4.
inline std::pair<CMatrix, CMatrix> generic_mats() {
  return {diag2(1, 0), mat2(0.25, kSqrt3 / 4, kSqrt3 / 4, 0.75)};
}
// The rank-one skew idempotents.
inline std::pair<CMatrix, CMatrix> skew_mats() { return {mat2(0, -1, 0, 1), mat2(1, 2, 0, 0)}; }

inline twoproj::OrthProjPair as_pair(const std::pair<CMatrix, CMatrix>& pq) {
  return twoproj::make_orth_pair(pq.first, pq.second);
}

// Block-diagonal direct sum.
inline CMatrix direct_sum(const CMatrix& a, const CMatrix& b) {
  CMatrix out = CMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

// Random subspace dimensions with total in [2, max_dim]; corners are forced
// nonzero with probability about one half each.
inline twoproj::SubspaceDims random_dims(std::mt19937_64& rng, Index max_dim, bool balanced_corners = false) {
  std::uniform_int_distribution<int> coin(0, 1);
  for (;;) {
    twoproj::SubspaceDims d;
    std::uniform_int_distribution<Index> small(0, std::max<Index>(1, max_dim / 6));
    d.d00 = coin(rng) ? small(rng) : 0;
    d.d01 = coin(rng) ? small(rng) : 0;
    d.d10 = balanced_corners ? d.d01 : (coin(rng) ? small(rng) : 0);
    d.d11 = coin(rng) ? small(rng) : 0;
    const Index used = d.d00 + d.d01 + d.d10 + d.d11;
    if (used > max_dim) continue;
    std::uniform_int_distribution<Index> gen(0, (max_dim - used) / 2);
    d.dM = gen(rng);
    if (d.total() >= 2) return d;
  }
}

// Idempotent pair of the given ranks. With `collide`, a vector of ran P is
// placed in ker Q, which makes I - P - Q singular.
inline std::pair<CMatrix, CMatrix> random_idempotent_pair(Index n, Index rank_p, Index rank_q, bool collide,
                                                          std::mt19937_64& rng) {
  auto well_conditioned = [&] {
    for (;;) {
      CMatrix v = twoproj::gaussian_matrix(n, n, rng);
      if (twoproj::condition_number(v) < 1e3) return v;
    }
  };
  auto projector = [n](const CMatrix& v, Index r) {
    CMatrix d = CMatrix::Zero(n, n);
    for (Index k = 0; k < r; ++k) d(k, k) = 1.0;
    return CMatrix(v * d * v.inverse());
  };
  const CMatrix v = well_conditioned();
  CMatrix w = well_conditioned();
  if (collide && rank_p > 0 && rank_q < n) {
    for (;;) {
      w.col(n - 1) = v.col(0);
      if (twoproj::condition_number(w) < 1e3) break;
      w = well_conditioned();
    }
  }
  return {projector(v, rank_p), projector(w, rank_q)};
}

}  // namespace fixtures
