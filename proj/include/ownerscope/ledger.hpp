#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "ownerscope/types.hpp"

namespace ownerscope::metrics {

// Per-component contribution tally up to a cutoff. One non-merge commit
// touching the component counts as one contribution regardless of lines.
struct ContributionLedger {
  std::string component;
  std::int64_t cutoff = 0;
  std::map<std::string, std::int64_t> counts;  // contributor -> commit count
  std::int64_t total = 0;
};

// Requires commits sorted ascending by timestamp. Raises ComponentUnknown
// when no counted commit touches the component at or before the cutoff.
ContributionLedger build_ledger(std::span<const CommitRecord> commits,
                                std::string_view component, std::int64_t cutoff);

struct OwnershipProfile {
  double ownership = 0.0;  // top contributor's proportion
  std::int64_t n_contributors = 0;
  std::int64_t n_minor = 0;  // contributors with proportion strictly < threshold
  double per_minor = 0.0;
  double threshold = 0.0;
};

// threshold must lie in (0,1); raises InvalidThreshold otherwise.
OwnershipProfile ownership_profile(const ContributionLedger& ledger, double threshold);

struct ClassicMetrics {
  std::int64_t file_size = 0;  // max(0, sum added - sum deleted) at cutoff
  std::int64_t code_churn = 0; // sum added + deleted at cutoff
  double churn_rate = 0.0;     // churn / max(size, 1)
};

// Same counting rules as build_ledger; binary (unknown) deltas contribute 0.
ClassicMetrics classic_metrics(std::span<const CommitRecord> commits,
                               std::string_view component, std::int64_t cutoff);

// Days from project start to the event. Raises NegativeSpan when the event
// precedes the start.
double days_difference(std::int64_t project_start, std::int64_t event);

// Days from the component's first commit to the event; NegativeSpan signals
// a mis-joined advisory.
double component_age(std::int64_t first_touch, std::int64_t event);

}  // namespace ownerscope::metrics
