#pragma once

// Seeded random test instances. Output is a pure function of
// (kind, dim, ranks, seed) and is bitwise reproducible on a given platform.

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

#include "twoproj/matcore.hpp"

namespace twoproj {

using Rng = std::mt19937_64;

enum class InstanceKind {
  unitary,
  orth_projection,
  orth_pair,
  generic_orth_pair,
  idempotent_pair,
};

std::string_view to_string(InstanceKind kind) noexcept;
/// Throws InvalidArgument for an unknown name.
InstanceKind parse_instance_kind(std::string_view name);

struct InstanceSpec {
  InstanceKind kind = InstanceKind::unitary;
  Index dim = 1;
  Index rank_p = 0;  // orth_projection, orth_pair, idempotent_pair
  Index rank_q = 0;  // orth_pair, idempotent_pair
};

struct RandomInstance {
  CMatrix first;
  std::optional<CMatrix> second;
};

/// Throws BadRank when a rank exceeds dim (or dim is odd for
/// generic_orth_pair, which needs rank dim/2 on both sides).
RandomInstance random_instance(const InstanceSpec& spec, std::uint64_t seed);

// Building blocks, exposed for tests and the structured generators.
CMatrix gaussian_matrix(Index rows, Index cols, Rng& rng);
/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// phases of diag(R) moved into Q.
CMatrix haar_unitary(Index n, Rng& rng);
CMatrix random_orth_projection(Index n, Index rank, Rng& rng);
/// V diag(I_rank, 0) V^{-1} with cond(V) <= 1e3 (rejection sampling).
CMatrix random_idempotent(Index n, Index rank, Rng& rng);
Complex random_phase(Rng& rng);

}  // namespace twoproj
