#include "twoproj/algebras.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "twoproj/intertwine.hpp"

namespace twoproj {

namespace {

// Columns [basis00 basis01 basis10 basis11 | G Wb*]: coordinates in which
// members of A(P,Q) are block diagonal with scalar corners.
CMatrix algebra_frame(const HalmosDecomposition& dec) {
  const Index c = dec.dim - 2 * dec.dims.dM;
  CMatrix k(dec.dim, dec.dim);
  k.leftCols(c) = dec.frame().leftCols(c);
  k.rightCols(2 * dec.dims.dM) = dec.generic_frame() * dec.gauge().adjoint();
  return k;
}

struct Offsets {
  Index o00, o01, o10, o11, gen;
};

Offsets offsets_of(const SubspaceDims& d) {
  return {0, d.d00, d.d00 + d.d01, d.d00 + d.d01 + d.d10, d.d00 + d.d01 + d.d10 + d.d11};
}

std::optional<Complex> block_scalar(const CMatrix& x, Index at, Index size) {
  if (size == 0) return std::nullopt;
  return x.block(at, at, size, size).trace() / static_cast<double>(size);
}

}  // namespace

CMatrix assemble(const WstarForm& form, const HalmosDecomposition& dec) {
  const SubspaceDims& d = dec.dims;
  const Offsets o = offsets_of(d);
  if (form.phi.size() != dec.clusters.size())
    throw Error(ErrorKind::InconsistentDims, "one phi sample per eigenvalue cluster of H is required");
  const std::array<std::pair<const std::optional<Complex>*, std::pair<Index, Index>>, 4> corners{{
      {&form.a00, {o.o00, d.d00}},
      {&form.a01, {o.o01, d.d01}},
      {&form.a10, {o.o10, d.d10}},
      {&form.a11, {o.o11, d.d11}},
  }};
  CMatrix z = CMatrix::Zero(dec.dim, dec.dim);
  for (const auto& [value, range] : corners) {
    const auto [at, size] = range;
    if (value->has_value() != (size > 0))
      throw Error(ErrorKind::InconsistentDims, "corner scalar present for an empty subspace or missing");
    if (size > 0) z.block(at, at, size, size).diagonal().setConstant(**value);
  }
  const Index k = d.dM;
  for (std::size_t c = 0; c < dec.clusters.size(); ++c) {
    const auto& cl = dec.clusters[c];
    for (Index j = cl.begin; j < cl.begin + cl.size; ++j) {
      z(o.gen + j, o.gen + j) = form.phi[c][0];
      z(o.gen + j, o.gen + k + j) = form.phi[c][1];
      z(o.gen + k + j, o.gen + j) = form.phi[c][2];
      z(o.gen + k + j, o.gen + k + j) = form.phi[c][3];
    }
  }
  const CMatrix frame = algebra_frame(dec);
  return frame * z * frame.adjoint();
}

WstarExtraction extract_wstar(const CMatrix& t, const HalmosDecomposition& dec) {
  if (t.rows() != dec.dim || t.cols() != dec.dim)
    throw Error(ErrorKind::DimMismatch, "operator does not act on the decomposed space");
  const SubspaceDims& d = dec.dims;
  const Offsets o = offsets_of(d);
  const CMatrix frame = algebra_frame(dec);
  const CMatrix x = frame.adjoint() * t * frame;

  WstarExtraction out;
  out.form.a00 = block_scalar(x, o.o00, d.d00);
  out.form.a01 = block_scalar(x, o.o01, d.d01);
  out.form.a10 = block_scalar(x, o.o10, d.d10);
  out.form.a11 = block_scalar(x, o.o11, d.d11);
  const Index k = d.dM;
  for (const auto& cl : dec.clusters) {
    std::array<Complex, 4> phi{};
    const std::array<std::pair<Index, Index>, 4> quadrant{{{0, 0}, {0, k}, {k, 0}, {k, k}}};
    for (std::size_t qd = 0; qd < 4; ++qd) {
      const auto [r, c] = quadrant[qd];
      phi[qd] = x.block(o.gen + r + cl.begin, o.gen + c + cl.begin, cl.size, cl.size).trace() /
                static_cast<double>(cl.size);
    }
    out.form.phi.push_back(phi);
  }
  out.residual = spectral_norm(t - assemble(out.form, dec));
  return out;
}

std::optional<WstarForm> membership_in_wstar(const CMatrix& t, const HalmosDecomposition& dec,
                                             const Tolerance& tol) {
  WstarExtraction ex = extract_wstar(t, dec);
  if (ex.residual > tol.atol * std::max(1.0, spectral_norm(t))) return std::nullopt;
  return std::move(ex.form);
}

bool exists_unitary_in_wstar(const HalmosDecomposition& dec) {
  return dec.dims.d01 == 0 && dec.dims.d10 == 0;
}

CMatrix wstar_unitary(const HalmosDecomposition& dec, const UnimodularParams& params,
                      const Tolerance& tol) {
  const SubspaceDims& d = dec.dims;
  if (!exists_unitary_in_wstar(dec))
    throw Error(ErrorKind::NotApplicable, "M01 or M10 is nonzero; no unitary intertwiner lies in A(P,Q)");
  if ((params.a0 && d.d00 == 0) || (params.a1 && d.d11 == 0))
    throw Error(ErrorKind::NotApplicable, "phase supplied for a zero subspace");
  if (params.phi.size() != dec.clusters.size()) {
    std::ostringstream os;
    os << "expected " << dec.clusters.size() << " phi samples, got " << params.phi.size();
    throw Error(ErrorKind::DimMismatch, os.str());
  }
  auto check_unimodular = [&tol](Complex z, const char* what) {
    if (std::abs(std::abs(z) - 1.0) > tol.atol) {
      std::ostringstream os;
      os << what << " has modulus " << std::abs(z);
      throw Error(ErrorKind::NotUnimodular, os.str());
    }
  };
  const Complex a0 = params.a0.value_or(Complex(1.0, 0.0));
  const Complex a1 = params.a1.value_or(Complex(1.0, 0.0));
  check_unimodular(a0, "a0");
  check_unimodular(a1, "a1");
  for (const Complex& z : params.phi) check_unimodular(z, "phi sample");

  const Index k = d.dM;
  const CMatrix v = function_of_h(dec, params.phi);
  CMatrix gen = CMatrix::Zero(2 * k, 2 * k);
  gen.topLeftCorner(k, k) = v;
  gen.bottomRightCorner(k, k) = v;
  return a0 * dec.basis00 * dec.basis00.adjoint() + a1 * dec.basis11 * dec.basis11.adjoint() +
         embed_generic(dec, gen * generic_rotation(dec));
}

bool exists_unitary_in_cstar(const OrthProjPair& pair, const HalmosDecomposition& dec,
                             const Tolerance& tol) {
  const CMatrix s = pair.P() + pair.Q() - identity(pair.dim());
  const double smin = smallest_singular_value(s);
  const bool cstar = smin > tol.rank_tol;
  if (cstar != exists_unitary_in_wstar(dec)) {
    std::ostringstream os;
    os << "C*-criterion (sigma_min(P+Q-I) = " << smin << ") disagrees with the W*-criterion (d01 = "
       << dec.dims.d01 << ", d10 = " << dec.dims.d10 << ")";
    throw Error(ErrorKind::InconsistentDims, os.str());
  }
  return cstar;
}

bool simple_spectrum_all_in(const HalmosDecomposition& dec, const Tolerance& tol) {
  if (!dec.dims.generic()) return false;
  const auto clusters = cluster_eigenvalues(dec.h, tol.rank_tol);
  return std::all_of(clusters.begin(), clusters.end(), [](const EigenCluster& c) { return c.size == 1; });
}

}  // namespace twoproj
