#pragma once

// Dense complex matrix calculus shared by every other module.
//
// Norm convention: ||.|| is the spectral norm (largest singular value)
// everywhere in this library unless a function name says otherwise.

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace twoproj {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

enum class ErrorKind {
  NotSquare,
  NotHermitian,
  NotProjection,
  NotIdempotent,
  DimMismatch,
  DomainError,
  Singular,
  BadRank,
  NormTooLarge,
  InconsistentDims,
  NotInjective,
  NotGeneric,
  NotCommuting,
  NotUnitary,
  NotUnimodular,
  NotApplicable,
  SpectrumOnCut,
  NotDiagonalizable,
  RankMismatch,
  InvalidArgument,
  ParseError,
  DimensionError,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Absolute residual bound and the threshold used for every rank,
/// subspace and eigenvalue-cluster decision.
struct Tolerance {
  double atol = 1e-10;
  double rank_tol = 1e-8;

  /// Defaults for an input of spectral norm `norm`:
  /// atol = 1e-10 max(1, norm), rank_tol = 1e-8 max(1, norm).
  static Tolerance scaled(double norm);

  /// Throws InvalidArgument unless both fields are positive and finite.
  void validate() const;
};

struct EigenSystem {
  RVector values;    // ascending
  CMatrix vectors;   // orthonormal columns, vectors.col(k) <-> values(k)
};

/// A run of ascending eigenvalues whose consecutive gaps are <= the
/// clustering threshold.
struct EigenCluster {
  Index begin = 0;
  Index size = 0;
  double center = 0.0;
};

/// Scalar function applied through the spectral theorem. `defined_at`
/// receives (eigenvalue, rank_tol) and decides the declared domain.
struct SpectralFunction {
  std::function<Complex(double)> value;
  std::function<bool(double, double)> defined_at;
  bool real_valued = true;

  static SpectralFunction identity();
  /// sqrt on [0, inf); eigenvalues in [-rank_tol, 0) are read as 0.
  static SpectralFunction sqrt();
  /// x^{-1/2} on (rank_tol, inf).
  static SpectralFunction inverse_sqrt();
  /// +1 / -1 away from zero; undefined within rank_tol of 0.
  static SpectralFunction sign();
  /// Total real function.
  static SpectralFunction real(std::function<double(double)> f);
  /// Total complex-valued function.
  static SpectralFunction complex(std::function<Complex(double)> f);
};

CMatrix identity(Index n);
bool all_finite(const CMatrix& m);

double spectral_norm(const CMatrix& m);
/// Smallest singular value; 0 for an empty or rank-deficient rectangular input.
double smallest_singular_value(const CMatrix& m);
/// sigma_max / sigma_min; +inf when singular.
double condition_number(const CMatrix& m);

void require_square(const CMatrix& m, std::string_view what);

/// Spectral decomposition of a hermitian matrix.
/// Throws NotSquare, or NotHermitian when ||M - M*|| > atol max(1, ||M||).
EigenSystem herm_eig(const CMatrix& m, const Tolerance& tol);

/// Single-linkage grouping of ascending eigenvalues with gap threshold `gap`.
std::vector<EigenCluster> cluster_eigenvalues(const RVector& ascending, double gap);

/// Replaces each eigenvalue by the mean of its cluster.
RVector snap_to_clusters(const RVector& ascending, const std::vector<EigenCluster>& clusters);

/// V diag(f(lambda)) V* for hermitian M. Throws DomainError when f is not
/// defined at some eigenvalue.
CMatrix matfun_hermitian(const CMatrix& m, const SpectralFunction& f, const Tolerance& tol);

/// Unitary factor u of M = u (M*M)^{1/2}. Throws Singular when the
/// smallest singular value is <= rank_tol.
CMatrix polar_unitary(const CMatrix& m, const Tolerance& tol);

/// Unitary factor of the polar decomposition of a full-column-rank
/// rectangular matrix, i.e. the closest matrix with orthonormal columns.
CMatrix orthonormalize(const CMatrix& m);

/// Multiplies each column by a unit scalar so that its first component
/// with modulus above 1e-8 is real and positive.
void phase_fix_columns(CMatrix& m);

/// Orthonormal basis of the null space of `map` (right singular vectors
/// whose singular value is <= rel_tol * sigma_max).
CMatrix nullspace(const CMatrix& map, double rel_tol);

}  // namespace twoproj
