#pragma once

// Shared test helpers: seeded generators and the independent oracles the
// stats kernel is checked against. Everything here must stay independent of
// the implementation paths under test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace testsupport {

inline std::vector<double> random_vector(std::mt19937_64& gen, std::size_t n,
                                         int tie_range = 0) {
  std::vector<double> values(n);
  if (tie_range > 0) {
    std::uniform_int_distribution<int> dist(0, tie_range);
    for (auto& v : values) v = dist(gen);
  } else {
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    for (auto& v : values) v = dist(gen);
  }
  return values;
}

// Kendall tau-b by exhaustive pair enumeration.
inline double kendall_bruteforce(const std::vector<double>& x,
                                 const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::int64_t concordant = 0, discordant = 0, ties_x = 0, ties_y = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx == 0.0) ++ties_x;
      if (dy == 0.0) ++ties_y;
      if (dx == 0.0 || dy == 0.0) continue;
      if (dx * dy > 0.0) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  const std::int64_t n0 = static_cast<std::int64_t>(n) *
                          (static_cast<std::int64_t>(n) - 1) / 2;
  const double denominator = std::sqrt(static_cast<double>(n0 - ties_x) *
                                       static_cast<double>(n0 - ties_y));
  return std::clamp(static_cast<double>(concordant - discordant) / denominator, -1.0,
                    1.0);
}

// Least squares through the normal equations (X^T X) b = X^T y solved by
// Gauss-Jordan with partial pivoting; intercept column appended last to
// match the kernel's coefficient order.
inline std::vector<double> ols_normal_equations(
    const std::vector<std::vector<double>>& predictors, const std::vector<double>& y) {
  const std::size_t n = y.size();
  const std::size_t m = predictors.size() + 1;
  std::vector<std::vector<double>> design(m, std::vector<double>(n, 1.0));
  for (std::size_t j = 0; j + 1 < m; ++j) design[j] = predictors[j];

  std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 0.0));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      for (std::size_t i = 0; i < n; ++i) a[r][c] += design[r][i] * design[c][i];
    }
    for (std::size_t i = 0; i < n; ++i) a[r][m] += design[r][i] * y[i];
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < m; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    std::swap(a[col], a[pivot]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col) continue;
      const double factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= m; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  std::vector<double> beta(m);
  for (std::size_t r = 0; r < m; ++r) beta[r] = a[r][m] / a[r][r];
  return beta;  // [slopes..., intercept]
}

}  // namespace testsupport
