#pragma once

#include "splitci/objective.hpp"

#include <cstdint>

namespace splitci {

// Seeded generators for the randomized verification suites. All draw from
// random_psd / NormalStream, so equal seeds give bit-identical output.

/// Split pair of dimension n. Each dependent part has a rank drawn
/// uniformly from {0, ..., n}; each independent part is a random PSD matrix
/// of drawn rank plus 0.05 I. With probability 1/4, when a dependent part
/// is drawn at full rank, its independent part is zeroed (the classic CI
/// case) and the dependent part gets the 0.05 I ridge instead. Entries are
/// normalized by 1/sqrt(n), keeping eigenvalues O(1).
SplitPair random_split_pair(Index n, std::uint64_t seed);

/// Positive definite matrix: random_psd(n, n) / n + 0.1 I.
SymMatrix random_pd(Index n, std::uint64_t seed);

/// n x m matrix of independent standard normals.
Matrix random_matrix(Index rows, Index cols, std::uint64_t seed);

struct AdmissibleTriple {
  SymMatrix x, y, z;
};

/// Triple with 0 < X <= Y and 0 <= Z <= X:
///   X = random_psd(n, n) / n + 0.05 I
///   Y = X + random_psd(n, r) / n,            r drawn from {0, ..., n}
///   Z = X^1/2 W X^1/2, W = Q diag(clip(l, 0, 1)) Q^T where Q, l are the
///       eigenpairs of 2 random_psd(n, r') / n, r' drawn from {0, ..., n}
/// so Z <= X holds by construction.
AdmissibleTriple random_admissible_triple(Index n, std::uint64_t seed);

}  // namespace splitci
