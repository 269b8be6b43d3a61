#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ownerscope::stats {

struct MantelResult {
  double r = 0.0;         // pearson over the upper-triangle entries
  double p_greater = 0.0; // (1 + #{r_perm >= r}) / (permutations + 1)
  double p_less = 0.0;    // complementary one-sided probability
  std::int64_t permutations = 0;  // draws actually evaluated
  bool exhaustive = false;        // all n! permutations enumerated
};

// Permutation test of the correlation between two distance matrices
// (square, symmetric, zero diagonal, row-major, side n). Row/column
// permutations of b are drawn from a generator seeded with `seed`; when
// n! <= permutations every permutation is enumerated instead and the
// p-values become exact counts over n!. Raises ShapeMismatch /
// NotSymmetric / TooFewSamples (n < 3 or a constant triangle).
MantelResult mantel(std::span<const double> a, std::span<const double> b,
                    std::size_t n, int permutations = 999, std::uint64_t seed = 0);

}  // namespace ownerscope::stats
