#include "ownerscope/stats/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "ownerscope/error.hpp"

namespace ownerscope::stats {
namespace {

void check_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    raise(ErrorKind::LengthMismatch,
          "inputs have sizes " + std::to_string(x.size()) + " and " +
              std::to_string(y.size()));
  }
  if (x.size() < 2) {
    raise(ErrorKind::TooFewSamples, "need at least 2 samples");
  }
}

bool is_constant(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); });
}

// Counts strict inversions (i < j with v[i] > v[j]) by merge sort.
std::int64_t count_inversions(std::vector<double>& values, std::vector<double>& scratch,
                              std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t inversions = count_inversions(values, scratch, lo, mid) +
                            count_inversions(values, scratch, mid, hi);
  std::size_t a = lo, b = mid, out = lo;
  while (a < mid && b < hi) {
    if (values[b] < values[a]) {
      inversions += static_cast<std::int64_t>(mid - a);
      scratch[out++] = values[b++];
    } else {
      scratch[out++] = values[a++];
    }
  }
  while (a < mid) scratch[out++] = values[a++];
  while (b < hi) scratch[out++] = values[b++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
            scratch.begin() + static_cast<std::ptrdiff_t>(hi),
            values.begin() + static_cast<std::ptrdiff_t>(lo));
  return inversions;
}

std::int64_t tie_pairs(std::span<const double> sorted_values) {
  std::int64_t pairs = 0;
  std::size_t i = 0;
  while (i < sorted_values.size()) {
    std::size_t j = i + 1;
    while (j < sorted_values.size() && sorted_values[j] == sorted_values[i]) ++j;
    const std::int64_t run = static_cast<std::int64_t>(j - i);
    pairs += run * (run - 1) / 2;
    i = j;
  }
  return pairs;
}

}  // namespace

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  if (is_constant(x) || is_constant(y)) return std::nullopt;

  const std::size_t n = x.size();
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);

  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> rank_with_ties(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && x[order[j]] == x[order[i]]) ++j;
    // Positions i..j-1 share the average of ranks i+1..j.
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

std::optional<double> spearman(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const auto rx = rank_with_ties(x);
  const auto ry = rank_with_ties(y);
  return pearson(rx, ry);
}

std::optional<double> kendall(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const std::size_t n = x.size();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (x[a] != x[b]) return x[a] < x[b];
    return y[a] < y[b];
  });

  // Tie pair counts: n1 over x runs, n3 over joint (x,y) runs, n2 over y.
  std::int64_t n1 = 0, n3 = 0;
  {
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i + 1;
      while (j < n && x[order[j]] == x[order[i]]) ++j;
      const std::int64_t run = static_cast<std::int64_t>(j - i);
      n1 += run * (run - 1) / 2;
      std::size_t k = i;
      while (k < j) {
        std::size_t m = k + 1;
        while (m < j && y[order[m]] == y[order[k]]) ++m;
        const std::int64_t joint = static_cast<std::int64_t>(m - k);
        n3 += joint * (joint - 1) / 2;
        k = m;
      }
      i = j;
    }
  }
  std::vector<double> y_in_x_order(n);
  for (std::size_t i = 0; i < n; ++i) y_in_x_order[i] = y[order[i]];
  std::int64_t n2 = 0;
  {
    std::vector<double> sorted_y(y_in_x_order);
    std::sort(sorted_y.begin(), sorted_y.end());
    n2 = tie_pairs(sorted_y);
  }
  std::vector<double> scratch(n);
  const std::int64_t discordant = count_inversions(y_in_x_order, scratch, 0, n);

  const std::int64_t n0 =
      static_cast<std::int64_t>(n) * (static_cast<std::int64_t>(n) - 1) / 2;
  if (n0 == n1 || n0 == n2) return std::nullopt;  // constant input
  const std::int64_t numerator = n0 - n1 - n2 + n3 - 2 * discordant;
  const double denominator = std::sqrt(static_cast<double>(n0 - n1) *
                                       static_cast<double>(n0 - n2));
  return std::clamp(static_cast<double>(numerator) / denominator, -1.0, 1.0);
}

}  // namespace ownerscope::stats
