#include "twoproj/random.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace twoproj {

std::string_view to_string(InstanceKind kind) noexcept {
  switch (kind) {
    case InstanceKind::unitary: return "unitary";
    case InstanceKind::orth_projection: return "orth_projection";
    case InstanceKind::orth_pair: return "orth_pair";
    case InstanceKind::generic_orth_pair: return "generic_orth_pair";
    case InstanceKind::idempotent_pair: return "idempotent_pair";
  }
  return "unknown";
}

InstanceKind parse_instance_kind(std::string_view name) {
  for (auto k : {InstanceKind::unitary, InstanceKind::orth_projection, InstanceKind::orth_pair,
                 InstanceKind::generic_orth_pair, InstanceKind::idempotent_pair}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown instance kind '" + std::string(name) + "'");
}

CMatrix gaussian_matrix(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::numbers::sqrt2 / 2.0);
  CMatrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

CMatrix haar_unitary(Index n, Rng& rng) {
  const CMatrix g = gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * identity(n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

CMatrix random_orth_projection(Index n, Index rank, Rng& rng) {
  const CMatrix u = haar_unitary(n, rng);
  const CMatrix basis = u.leftCols(rank);
  return basis * basis.adjoint();
}

CMatrix random_idempotent(Index n, Index rank, Rng& rng) {
  for (;;) {
    const CMatrix v = gaussian_matrix(n, n, rng);
    if (condition_number(v) > 1e3) continue;
    CMatrix d = CMatrix::Zero(n, n);
    d.topLeftCorner(rank, rank).setIdentity();
    return v * d * v.inverse();
  }
}

Complex random_phase(Rng& rng) {
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  return std::polar(1.0, angle(rng));
}

RandomInstance random_instance(const InstanceSpec& spec, std::uint64_t seed) {
  const Index n = spec.dim;
  if (n <= 0) throw Error(ErrorKind::BadRank, "dimension must be positive");
  auto check_rank = [n](Index r, const char* which) {
    if (r < 0 || r > n) {
      std::ostringstream os;
      os << which << " " << r << " outside [0, " << n << "]";
      throw Error(ErrorKind::BadRank, os.str());
    }
  };
  Rng rng(seed);
  switch (spec.kind) {
    case InstanceKind::unitary:
      return {haar_unitary(n, rng), std::nullopt};
    case InstanceKind::orth_projection:
      check_rank(spec.rank_p, "rank");
      return {random_orth_projection(n, spec.rank_p, rng), std::nullopt};
    case InstanceKind::orth_pair: {
      check_rank(spec.rank_p, "rank_p");
      check_rank(spec.rank_q, "rank_q");
      CMatrix p = random_orth_projection(n, spec.rank_p, rng);
      CMatrix q = random_orth_projection(n, spec.rank_q, rng);
      return {std::move(p), std::move(q)};
    }
    case InstanceKind::generic_orth_pair: {
      if (n % 2 != 0)
        throw Error(ErrorKind::BadRank, "generic position requires an even dimension");
      CMatrix p = random_orth_projection(n, n / 2, rng);
      CMatrix q = random_orth_projection(n, n / 2, rng);
      return {std::move(p), std::move(q)};
    }
    case InstanceKind::idempotent_pair: {
      check_rank(spec.rank_p, "rank_p");
      check_rank(spec.rank_q, "rank_q");
      CMatrix p = random_idempotent(n, spec.rank_p, rng);
      CMatrix q = random_idempotent(n, spec.rank_q, rng);
      return {std::move(p), std::move(q)};
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unhandled instance kind");
}

}  // namespace twoproj
