#pragma once

#include <span>

namespace ownerscope::stats {

struct KsResult {
  double d = 0.0;  // sup |ECDF_a - ECDF_b|
  double p = 1.0;  // asymptotic Kolmogorov survival at z = d * sqrt(nm/(n+m))
};

// Two-sample Kolmogorov-Smirnov statistic and asymptotic p-value with
// effective n = |a||b| / (|a|+|b|). Raises EmptySample.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

// Survival function of the Kolmogorov distribution. Uses the alternating
// series 2 * sum (-1)^(k-1) exp(-2 k^2 z^2) for large z and its theta-dual
// for small z; both truncated when terms drop below 1e-10.
double kolmogorov_sf(double z);

}  // namespace ownerscope::stats
