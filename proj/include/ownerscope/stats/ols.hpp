#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ownerscope::stats {

struct RegressionResult {
  // One slope per predictor, intercept last.
  std::vector<double> coefficients;
  double r_squared = 0.0;
  double adj_r_squared = 0.0;
  double f_statistic = 0.0;  // +inf for an exact fit
  std::int64_t n = 0;
  std::int64_t p = 0;
};

// Least squares via Householder QR on [1 | X] (no normal-equations inverse).
// predictors[k] is the k-th column. Requires n > p + 1 (TooFewSamples).
// Collinear columns raise RankDeficient with the offending predictor
// indices in Error::columns. A constant y yields r_squared = 0.
RegressionResult ols_fit(const std::vector<std::vector<double>>& predictors,
                         std::span<const double> y);

}  // namespace ownerscope::stats
