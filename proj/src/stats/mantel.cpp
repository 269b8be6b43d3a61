#include "ownerscope/stats/mantel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "ownerscope/error.hpp"
#include "ownerscope/stats/correlation.hpp"

namespace ownerscope::stats {
namespace {

void check_distance_matrix(std::span<const double> m, std::size_t n, const char* name) {
  if (m.size() != n * n) {
    raise(ErrorKind::ShapeMismatch,
          std::string(name) + " does not have n*n entries for n = " + std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(m[i * n + i]) > 1e-12) {
      raise(ErrorKind::NotSymmetric, std::string(name) + " has a non-zero diagonal");
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(m[i * n + j] - m[j * n + i]) > 1e-12) {
        raise(ErrorKind::NotSymmetric, std::string(name) + " is not symmetric");
      }
    }
  }
}

std::vector<double> upper_triangle(std::span<const double> m, std::size_t n,
                                   std::span<const std::size_t> perm) {
  std::vector<double> entries;
  entries.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      entries.push_back(m[perm[i] * n + perm[j]]);
    }
  }
  return entries;
}

double pearson_required(std::span<const double> x, std::span<const double> y) {
  const auto r = pearson(x, y);
  if (!r) {
    raise(ErrorKind::TooFewSamples, "constant distance matrix; correlation undefined");
  }
  return *r;
}

// Factorial capped at the first value exceeding `limit`.
std::uint64_t capped_factorial(std::size_t n, std::uint64_t limit) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) {
    if (f > limit / i) return limit + 1;
    f *= i;
  }
  return f;
}

}  // namespace

MantelResult mantel(std::span<const double> a, std::span<const double> b,
                    std::size_t n, int permutations, std::uint64_t seed) {
  if (n < 3) {
    raise(ErrorKind::TooFewSamples, "mantel needs matrices of side >= 3");
  }
  if (permutations < 1) {
    raise(ErrorKind::TooFewSamples, "permutation count must be positive");
  }
  check_distance_matrix(a, n, "first matrix");
  check_distance_matrix(b, n, "second matrix");

  std::vector<std::size_t> identity(n);
  std::iota(identity.begin(), identity.end(), 0);
  const auto ua = upper_triangle(a, n, identity);
  const auto ub = upper_triangle(b, n, identity);

  MantelResult result;
  result.r = pearson_required(ua, ub);

  const std::uint64_t total =
      capped_factorial(n, static_cast<std::uint64_t>(permutations));
  if (total <= static_cast<std::uint64_t>(permutations)) {
    // Small matrix: enumerate every permutation; identity is one of them,
    // so both counts are at least 1 and the p-values are exact.
    std::int64_t ge = 0, le = 0;
    std::vector<std::size_t> perm(identity);
    do {
      const double r = pearson_required(ua, upper_triangle(b, n, perm));
      if (r >= result.r) ++ge;
      if (r <= result.r) ++le;
    } while (std::next_permutation(perm.begin(), perm.end()));
    result.p_greater = static_cast<double>(ge) / static_cast<double>(total);
    result.p_less = static_cast<double>(le) / static_cast<double>(total);
    result.permutations = static_cast<std::int64_t>(total);
    result.exhaustive = true;
    return result;
  }

  std::mt19937_64 gen(seed);
  std::vector<std::size_t> perm(identity);
  std::int64_t ge = 0, le = 0;
  for (int k = 0; k < permutations; ++k) {
    // Explicit Fisher-Yates keeps the draw sequence identical across
    // standard libraries (std::shuffle is implementation-defined).
    for (std::size_t i = n - 1; i > 0; --i) {
      const std::size_t j = static_cast<std::size_t>(gen() % (i + 1));
      std::swap(perm[i], perm[j]);
    }
    const double r = pearson_required(ua, upper_triangle(b, n, perm));
    if (r >= result.r) ++ge;
    if (r <= result.r) ++le;
  }
  result.p_greater = static_cast<double>(1 + ge) / static_cast<double>(permutations + 1);
  result.p_less = static_cast<double>(1 + le) / static_cast<double>(permutations + 1);
  result.permutations = permutations;
  result.exhaustive = false;
  return result;
}

}  // namespace ownerscope::stats
