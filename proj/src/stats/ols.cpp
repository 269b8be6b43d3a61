#include "ownerscope/stats/ols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ownerscope/error.hpp"

namespace ownerscope::stats {

RegressionResult ols_fit(const std::vector<std::vector<double>>& predictors,
                         std::span<const double> y) {
  const std::size_t n = y.size();
  const std::size_t p = predictors.size();
  const std::size_t m = p + 1;  // intercept column
  if (p == 0) {
    raise(ErrorKind::TooFewSamples, "need at least one predictor");
  }
  if (n <= m) {
    raise(ErrorKind::TooFewSamples,
          "need n > p + 1 (n = " + std::to_string(n) + ", p = " + std::to_string(p) + ")");
  }
  for (const auto& column : predictors) {
    if (column.size() != n) {
      raise(ErrorKind::LengthMismatch, "predictor column length differs from y");
    }
  }

  // Column-major design matrix, intercept first.
  std::vector<std::vector<double>> design(m, std::vector<double>(n));
  design[0].assign(n, 1.0);
  for (std::size_t j = 0; j < p; ++j) design[j + 1] = predictors[j];
  std::vector<double> rhs(y.begin(), y.end());

  // Householder QR applied column by column; reflectors are applied to the
  // remaining columns and to rhs immediately, leaving R in `design` and
  // Q^T y in `rhs`.
  double max_diag = 0.0;
  std::vector<double> diag(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    auto& col = design[k];
    double norm = 0.0;
    for (std::size_t i = k; i < n; ++i) norm += col[i] * col[i];
    norm = std::sqrt(norm);
    diag[k] = norm;
    max_diag = std::max(max_diag, norm);
    if (norm == 0.0) continue;  // fully dependent column; flagged below

    const double alpha = col[k] >= 0.0 ? -norm : norm;
    // v = x - alpha * e_k, stored in place of the column tail.
    col[k] -= alpha;
    double v_norm_sq = 0.0;
    for (std::size_t i = k; i < n; ++i) v_norm_sq += col[i] * col[i];
    if (v_norm_sq > 0.0) {
      auto reflect = [&](std::vector<double>& target) {
        double dot = 0.0;
        for (std::size_t i = k; i < n; ++i) dot += col[i] * target[i];
        const double scale = 2.0 * dot / v_norm_sq;
        for (std::size_t i = k; i < n; ++i) target[i] -= scale * col[i];
      };
      for (std::size_t j = k + 1; j < m; ++j) reflect(design[j]);
      reflect(rhs);
    }
    // R[k][k] = alpha; the tail of this column is no longer needed.
    col[k] = alpha;
    diag[k] = std::abs(alpha);
  }

  const double tolerance = std::numeric_limits<double>::epsilon() *
                           static_cast<double>(n) * std::max(max_diag, 1.0);
  std::vector<std::size_t> deficient;
  for (std::size_t k = 1; k < m; ++k) {
    if (diag[k] <= tolerance) deficient.push_back(k - 1);
  }
  if (!deficient.empty()) {
    std::string which;
    for (std::size_t idx : deficient) {
      if (!which.empty()) which += ", ";
      which += std::to_string(idx);
    }
    Error error(ErrorKind::RankDeficient, "collinear predictor column(s): " + which);
    error.columns = deficient;
    throw error;
  }

  // Back substitution on the upper-triangular system R beta = (Q^T y)[0..m).
  std::vector<double> beta(m, 0.0);
  for (std::size_t k = m; k-- > 0;) {
    double value = rhs[k];
    for (std::size_t j = k + 1; j < m; ++j) value -= design[j][k] * beta[j];
    beta[k] = value / design[k][k];
  }

  double sse = 0.0;
  for (std::size_t i = m; i < n; ++i) sse += rhs[i] * rhs[i];
  double mean = 0.0;
  for (const double value : y) mean += value;
  mean /= static_cast<double>(n);
  double sst = 0.0;
  for (const double value : y) sst += (value - mean) * (value - mean);

  RegressionResult result;
  result.n = static_cast<std::int64_t>(n);
  result.p = static_cast<std::int64_t>(p);
  result.coefficients.assign(beta.begin() + 1, beta.end());
  result.coefficients.push_back(beta[0]);

  const double dof = static_cast<double>(n - p - 1);
  result.r_squared = sst > 0.0 ? std::clamp(1.0 - sse / sst, 0.0, 1.0) : 0.0;
  result.adj_r_squared =
      1.0 - (1.0 - result.r_squared) * static_cast<double>(n - 1) / dof;
  if (result.r_squared >= 1.0) {
    result.f_statistic = std::numeric_limits<double>::infinity();
  } else {
    result.f_statistic = (result.r_squared / static_cast<double>(p)) /
                         ((1.0 - result.r_squared) / dof);
  }
  return result;
}

}  // namespace ownerscope::stats
