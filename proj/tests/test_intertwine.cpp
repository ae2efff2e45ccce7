#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "twoproj/halmos.hpp"
#include "twoproj/intertwine.hpp"
#include "twoproj/skew.hpp"

using namespace twoproj;
using fixtures::diag2;
using fixtures::dist;
using fixtures::mat2;

namespace {

const double kHalfRoot3 = std::sqrt(3.0) / 2;

CMatrix wdd_generic_block() { return mat2(0.5, kHalfRoot3, kHalfRoot3, -0.5); }

HalmosDecomposition decompose(const OrthProjPair& pair) {
  return halmos_decompose(pair, default_tolerance(pair.P(), pair.Q()));
}

// Pair with A = diag(t, -t), B = [0 s; s 0], s = sqrt(1 - t^2).
OrthProjPair canonical_pair(double t) {
  const double s = std::sqrt(1 - t * t);
  const CMatrix a = diag2(t, -t);
  const CMatrix b = mat2(0, s, s, 0);
  const CMatrix id = identity(2);
  return make_orth_pair(0.5 * (id + a - b), 0.5 * (id - a - b));
}

CMatrix restrict_to_generic(const HalmosDecomposition& dec, const CMatrix& t) {
  const CMatrix g = dec.generic_frame();
  return g * g.adjoint() * t * g * g.adjoint();
}

}  // namespace

TEST_CASE("wdd_unitary examples") {
  const Tolerance tol;
  const OrthProjPair comp = fixtures::as_pair(fixtures::complementary_mats());
  CHECK(dist(wdd_unitary(decompose(comp), CMatrix::Identity(1, 1), tol), mat2(0, 1, 1, 0)) < 1e-15);

  const OrthProjPair eq = fixtures::as_pair(fixtures::equal_mats());
  CHECK(dist(wdd_unitary(decompose(eq), CMatrix(0, 0), tol), identity(2)) < 1e-15);

  const OrthProjPair gen = fixtures::as_pair(fixtures::generic_mats());
  const CMatrix u = wdd_unitary(decompose(gen), CMatrix(0, 0), tol);
  CHECK(dist(u, wdd_generic_block()) < 1e-14);
  CHECK(dist(u * gen.P() * u.adjoint(), gen.Q()) < 1e-14);
}

TEST_CASE("wdd_unitary refuses mismatched corners and bad S") {
  const Tolerance tol;
  const OrthProjPair lopsided = make_orth_pair(diag2(1, 0), CMatrix::Zero(2, 2));
  try {
    wdd_unitary(decompose(lopsided), CMatrix(1, 0), tol);
    FAIL("expected DimMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimMismatch);
  }
  const OrthProjPair comp = fixtures::as_pair(fixtures::complementary_mats());
  CMatrix s(1, 1);
  s(0, 0) = 2.0;
  try {
    wdd_unitary(decompose(comp), s, tol);
    FAIL("expected NotUnitary");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotUnitary);
  }
}

TEST_CASE("sgn_b examples") {
  const Tolerance tol;
  const OrthProjPair eq = fixtures::as_pair(fixtures::equal_mats());
  CHECK(dist(sgn_b(eq, decompose(eq), tol), diag2(-1, 1)) < 1e-15);

  const OrthProjPair gen = fixtures::as_pair(fixtures::generic_mats());
  const CMatrix s = sgn_b(gen, decompose(gen), tol);
  CHECK(dist(s, -wdd_generic_block()) < 1e-14);

  const OrthProjPair comp = fixtures::as_pair(fixtures::complementary_mats());
  try {
    sgn_b(comp, decompose(comp), tol);
    FAIL("expected NotInjective");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotInjective);
  }
}

TEST_CASE("susy_canonical examples") {
  const Tolerance tol;
  const OrthProjPair gen = fixtures::as_pair(fixtures::generic_mats());
  const SusyCanonicalForm c = susy_canonical(gen, tol);
  REQUIRE(c.a_values.size() == 1);
  CHECK(c.a_values(0) == doctest::Approx(kHalfRoot3).epsilon(1e-14));
  CHECK(std::sqrt(1 - c.a_values(0) * c.a_values(0)) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(verify_susy_canonical(gen, decompose(gen), c, tol).verdict);

  const OrthProjPair already = canonical_pair(0.6);
  const SusyCanonicalForm c6 = susy_canonical(already, tol);
  CHECK(dist(c6.Y, identity(2)) < 1e-15);
  CHECK(c6.a_values(0) == doctest::Approx(0.6).epsilon(1e-15));

  const RandomInstance inst = random_instance({InstanceKind::generic_orth_pair, 4, 0, 0}, 3);
  const OrthProjPair g4 = make_orth_pair(inst.first, *inst.second);
  const SusyCanonicalForm c4 = susy_canonical(g4, tol);
  const VerificationReport rep = verify_susy_canonical(g4, decompose(g4), c4, tol);
  for (const auto& r : rep.residuals) CHECK(r.value <= 1e-9);

  try {
    susy_canonical(fixtures::as_pair(fixtures::equal_mats()), tol);
    FAIL("expected NotGeneric");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotGeneric);
  }
}

TEST_CASE("general_unitary_halmos examples") {
  const Tolerance tol;
  const OrthProjPair gen = fixtures::as_pair(fixtures::generic_mats());
  const HalmosDecomposition dec = decompose(gen);
  IntertwinerParams p = identity_params(dec);
  CHECK(dist(general_unitary_halmos(dec, p, tol), wdd_unitary(dec, CMatrix(0, 0), tol)) < 1e-15);

  const Complex phase = std::polar(1.0, M_PI / 3);
  p.V(0, 0) = phase;
  const CMatrix u = general_unitary_halmos(dec, p, tol);
  CHECK(dist(u, phase * wdd_generic_block()) < 1e-14);
  CHECK(verify_symmetric_intertwiner(gen, u, tol).verdict);

  const OrthProjPair comp = fixtures::as_pair(fixtures::complementary_mats());
  const HalmosDecomposition dc = decompose(comp);
  IntertwinerParams pc = identity_params(dc);
  pc.U01(0, 0) = Complex(0, 1);
  pc.U10(0, 0) = std::polar(1.0, 0.7);
  const CMatrix uc = general_unitary_halmos(dc, pc, tol);
  CHECK(dist(uc, mat2(0, std::polar(1.0, 0.7), Complex(0, 1), 0)) < 1e-15);
  CHECK(verify_symmetric_intertwiner(comp, uc, tol).verdict);
}

TEST_CASE("general_unitary_halmos rejects V that does not commute with H") {
  const std::array<double, 2> h{0.3, 0.6};
  const OrthProjPair pair = random_structured_pair(SubspaceDims{0, 0, 0, 0, 2}, h, 5);
  const HalmosDecomposition dec = decompose(pair);
  IntertwinerParams p = identity_params(dec);
  p.V = mat2(0, 1, 1, 0);
  try {
    general_unitary_halmos(dec, p, dec.tol);
    FAIL("expected NotCommuting");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotCommuting);
  }
}

TEST_CASE("general_unitary_susy examples") {
  const Tolerance tol;
  const OrthProjPair gen = fixtures::as_pair(fixtures::generic_mats());
  const HalmosDecomposition dec = decompose(gen);
  const SusyCanonicalForm c = susy_canonical(gen, dec, tol);
  IntertwinerParams p = identity_params(dec);
  const CMatrix plus = general_unitary_susy(dec, c, p, tol);
  CHECK(dist(plus, sgn_b(gen, dec, tol)) < 1e-14);
  CHECK(verify_symmetric_intertwiner(gen, plus, tol).verdict);
  p.V(0, 0) = -1.0;
  CHECK(dist(general_unitary_susy(dec, c, p, tol), -plus) < 1e-15);

  const RandomInstance inst = random_instance({InstanceKind::generic_orth_pair, 4, 0, 0}, 8);
  const OrthProjPair g4 = make_orth_pair(inst.first, *inst.second);
  const HalmosDecomposition d4 = decompose(g4);
  const SusyCanonicalForm c4 = susy_canonical(g4, d4, d4.tol);
  IntertwinerParams p4 = identity_params(d4);
  for (Index j = 0; j < 2; ++j) p4.V(j, j) = std::polar(1.0, 0.3 * c4.a_values(j));
  const CMatrix u4 = general_unitary_susy(d4, c4, p4, d4.tol);
  CHECK(verify_symmetric_intertwiner(g4, u4, d4.tol).verdict);
}

TEST_CASE("verify_symmetric_intertwiner examples") {
  const Tolerance tol;
  const OrthProjPair comp = fixtures::as_pair(fixtures::complementary_mats());
  CHECK(verify_symmetric_intertwiner(comp, mat2(0, 1, 1, 0), tol).verdict);
  const VerificationReport bad = verify_symmetric_intertwiner(comp, identity(2), tol);
  CHECK_FALSE(bad.verdict);
  CHECK(bad.find("UP-QU")->value == doctest::Approx(1.0));

  const OrthProjPair gen = fixtures::as_pair(fixtures::generic_mats());
  const VerificationReport good =
      verify_symmetric_intertwiner(gen, wdd_unitary(decompose(gen), CMatrix(0, 0), tol), tol);
  for (const auto& r : good.residuals) CHECK(r.value <= 1e-12);
}

TEST_CASE("factor_through examples") {
  const Tolerance tol;
  const OrthProjPair gen = fixtures::as_pair(fixtures::generic_mats());
  const HalmosDecomposition dec = decompose(gen);
  const CMatrix v0 = wdd_unitary(dec, CMatrix(0, 0), tol);

  const Complex e11 = std::polar(1.0, 1.1);
  const Factorization scalar = factor_through(e11 * v0, v0, gen.P(), gen.Q(), tol);
  CHECK(dist(scalar.C, e11 * identity(2)) < 1e-14);
  CHECK(scalar.report.verdict);

  IntertwinerParams p = identity_params(dec);
  const Complex e3 = std::polar(1.0, M_PI / 3);
  p.V(0, 0) = e3;
  const Factorization f = factor_through(general_unitary_halmos(dec, p, tol), v0, gen.P(), gen.Q(), tol);
  CHECK(dist(f.C, e3 * identity(2)) < 1e-14);
  CHECK(f.report.verdict);

  // Skew family members: C commutes with Q but not with P.
  const auto [ps, qs] = fixtures::skew_mats();
  const CMatrix v = two_by_two_family(2.0, 1.0).first;
  const CMatrix w = two_by_two_family(1.0, 0.0).first;
  const Factorization skew = factor_through(v, w, ps, qs, tol);
  CHECK(dist(skew.C, mat2(2.5, 1.0, 0.0, 2.0)) < 1e-14);
  CHECK(skew.report.find("CP-PC")->value == doctest::Approx(0.5));
  CHECK(skew.report.find("CQ-QC")->value < 1e-14);
  CHECK_FALSE(skew.report.verdict);

  CHECK_THROWS_AS(factor_through(v, diag2(1, 0), ps, qs, tol), Error);
}

TEST_CASE("oracle_intertwiner_space examples") {
  const Tolerance tol;
  const auto [gp, gq] = fixtures::generic_mats();
  CHECK(oracle_intertwiner_space(gp, gq, tol).size() == 1);
  const auto [cp, cq] = fixtures::complementary_mats();
  CHECK(oracle_intertwiner_space(cp, cq, tol).size() == 2);

  const auto lopsided = oracle_intertwiner_space(diag2(1, 0), CMatrix::Zero(2, 2), tol);
  REQUIRE(lopsided.size() == 1);
  const CMatrix& z = lopsided.front();
  CHECK(std::abs(z(1, 1)) == doctest::Approx(1.0));
  CHECK(std::abs(z(0, 0)) + std::abs(z(0, 1)) + std::abs(z(1, 0)) < 1e-14);
}

TEST_CASE("property: family soundness on random pairs with corners") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const SubspaceDims want = fixtures::random_dims(rng, 12, true);
    const OrthProjPair pair = random_structured_pair(want, rng());
    const HalmosDecomposition dec = decompose(pair);
    const IntertwinerParams p = random_params(dec, rng());
    const CMatrix u = general_unitary_halmos(dec, p, dec.tol);
    CHECK(verify_symmetric_intertwiner(pair, u, dec.tol).verdict);

    const SusyCanonicalForm c = susy_canonical(pair, dec, dec.tol);
    CHECK(verify_susy_canonical(pair, dec, c, dec.tol).verdict);
    IntertwinerParams ps = p;
    ps.V = CMatrix::Zero(dec.dims.dM, dec.dims.dM);
    Rng local(rng());
    for (const auto& cl : c.clusters) ps.V.block(cl.begin, cl.begin, cl.size, cl.size) = haar_unitary(cl.size, local);
    CHECK(verify_symmetric_intertwiner(pair, general_unitary_susy(dec, c, ps, dec.tol), dec.tol).verdict);
  }
}

TEST_CASE("property: Y gauge reproduces sgn(B) and sgn(A) on the generic part") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const SubspaceDims want = fixtures::random_dims(rng, 10);
    const OrthProjPair pair = random_structured_pair(want, rng());
    const HalmosDecomposition dec = decompose(pair);
    if (dec.dims.dM == 0) continue;
    const SusyCanonicalForm c = susy_canonical(pair, dec, dec.tol);
    const Index k = dec.dims.dM;
    CMatrix swap = CMatrix::Zero(2 * k, 2 * k);
    swap.topRightCorner(k, k).setIdentity();
    swap.bottomLeftCorner(k, k).setIdentity();
    CMatrix signs = CMatrix::Identity(2 * k, 2 * k);
    signs.bottomRightCorner(k, k) *= -1.0;

    // On the generic part A and B are invertible, so the signs are defined there.
    const CMatrix g = dec.generic_frame();
    const auto sign_on_generic = [&](const CMatrix& m) {
      const CMatrix local = g.adjoint() * m * g;
      return CMatrix(g * matfun_hermitian(0.5 * (local + local.adjoint()), SpectralFunction::sign(), dec.tol) *
                     g.adjoint());
    };
    CHECK(dist(c.Y * swap * c.Y.adjoint(), sign_on_generic(pair.B())) <= 10 * dec.tol.atol);
    CHECK(dist(c.Y * signs * c.Y.adjoint(), sign_on_generic(pair.A())) <= 10 * dec.tol.atol);
    CHECK(dist(restrict_to_generic(dec, pair.A()), c.Y * c.Y.adjoint() * pair.A() * c.Y * c.Y.adjoint()) <=
          dec.tol.atol);
  }
}

TEST_CASE("property: oracle dimension equals commutant_dim when the swap exists") {
  std::mt19937_64 rng(5150);
  for (int trial = 0; trial < 40; ++trial) {
    const SubspaceDims want = fixtures::random_dims(rng, 8, true);
    const OrthProjPair pair = random_structured_pair(want, rng());
    const HalmosDecomposition dec = decompose(pair);
    const auto basis = oracle_intertwiner_space(pair.P(), pair.Q(), dec.tol);
    CHECK(static_cast<Index>(basis.size()) == commutant_dim(dec, dec.tol));
    CHECK(static_cast<Index>(basis.size()) ==
          oracles::intertwiner_nullity(pair.P(), pair.Q(), dec.tol.rank_tol, true));
    const CMatrix u = wdd_unitary(dec, identity(dec.dims.d01), dec.tol);
    // U lies in the span of the oracle basis.
    CMatrix flat(u.size(), static_cast<Index>(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j)
      flat.col(static_cast<Index>(j)) = basis[j].reshaped();
    const CMatrix coeffs = flat.adjoint() * u.reshaped();
    CHECK((flat * coeffs - u.reshaped()).norm() <= 10 * dec.tol.atol);
  }
}

TEST_CASE("function_of_h is scalar on each cluster") {
  const std::array<double, 3> h{0.25, 0.25, 0.7};
  const OrthProjPair pair = random_structured_pair(SubspaceDims{0, 0, 0, 0, 3}, h, 12);
  const HalmosDecomposition dec = decompose(pair);
  REQUIRE(dec.clusters.size() == 2);
  const CMatrix v = function_of_h(dec, {Complex(0, 1), Complex(-1, 0)});
  CHECK(v(0, 0) == Complex(0, 1));
  CHECK(v(1, 1) == Complex(0, 1));
  CHECK(v(2, 2) == Complex(-1, 0));
  CHECK_THROWS_AS(function_of_h(dec, {Complex(1, 0)}), Error);
}
