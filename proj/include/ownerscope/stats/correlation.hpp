#pragma once

#include <optional>
#include <span>
#include <vector>

namespace ownerscope::stats {

// Product-moment coefficient. Returns nullopt when either input is constant
// (zero variance). Raises LengthMismatch / TooFewSamples (< 2).
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

// 1-based fractional ranks; ties receive the average of their rank run.
std::vector<double> rank_with_ties(std::span<const double> x);

// Pearson applied to rank_with_ties of each input.
std::optional<double> spearman(std::span<const double> x, std::span<const double> y);

// Kendall tau-b (tie-corrected), O(n log n) via merge-sort inversion
// counting. Matches exact pair enumeration bit for bit.
std::optional<double> kendall(std::span<const double> x, std::span<const double> y);

}  // namespace ownerscope::stats
