#include "ownerscope/ledger.hpp"

#include <algorithm>

#include "ownerscope/csv.hpp"
#include "ownerscope/error.hpp"
#include "ownerscope/timeutil.hpp"

namespace ownerscope::metrics {
namespace {

bool touches(const CommitRecord& commit, std::string_view component) {
  return std::any_of(commit.changes.begin(), commit.changes.end(),
                     [&](const FileChange& change) { return change.path == component; });
}

}  // namespace

ContributionLedger build_ledger(std::span<const CommitRecord> commits,
                                std::string_view component, std::int64_t cutoff) {
  ContributionLedger ledger;
  ledger.component = std::string(component);
  ledger.cutoff = cutoff;
  for (const CommitRecord& commit : commits) {
    if (commit.timestamp > cutoff) break;
    if (commit.is_merge()) continue;
    if (!touches(commit, component)) continue;
    ++ledger.counts[commit.author];
    ++ledger.total;
  }
  if (ledger.total == 0) {
    raise(ErrorKind::ComponentUnknown,
          "no commit touches '" + ledger.component + "' at or before cutoff");
  }
  return ledger;
}

OwnershipProfile ownership_profile(const ContributionLedger& ledger, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    raise(ErrorKind::InvalidThreshold,
          "threshold must lie in (0,1), got " + csv::format_double(threshold));
  }
  OwnershipProfile profile;
  profile.threshold = threshold;
  profile.n_contributors = static_cast<std::int64_t>(ledger.counts.size());
  const double total = static_cast<double>(ledger.total);
  for (const auto& [author, count] : ledger.counts) {
    const double proportion = static_cast<double>(count) / total;
    profile.ownership = std::max(profile.ownership, proportion);
    if (proportion < threshold) ++profile.n_minor;
  }
  profile.per_minor =
      static_cast<double>(profile.n_minor) / static_cast<double>(profile.n_contributors);
  return profile;
}

ClassicMetrics classic_metrics(std::span<const CommitRecord> commits,
                               std::string_view component, std::int64_t cutoff) {
  std::int64_t added = 0, deleted = 0;
  bool seen = false;
  for (const CommitRecord& commit : commits) {
    if (commit.timestamp > cutoff) break;
    if (commit.is_merge()) continue;
    for (const FileChange& change : commit.changes) {
      if (change.path != component) continue;
      seen = true;
      if (change.added) {
        added += *change.added;
        deleted += *change.deleted;
      }
    }
  }
  if (!seen) {
    raise(ErrorKind::ComponentUnknown,
          "no commit touches '" + std::string(component) + "' at or before cutoff");
  }
  ClassicMetrics classic;
  classic.code_churn = added + deleted;
  classic.file_size = std::max<std::int64_t>(0, added - deleted);
  classic.churn_rate = static_cast<double>(classic.code_churn) /
                       static_cast<double>(std::max<std::int64_t>(classic.file_size, 1));
  return classic;
}

double days_difference(std::int64_t project_start, std::int64_t event) {
  if (event < project_start) {
    raise(ErrorKind::NegativeSpan, "event precedes project start");
  }
  return timeutil::to_days(event - project_start);
}

double component_age(std::int64_t first_touch, std::int64_t event) {
  if (event < first_touch) {
    raise(ErrorKind::NegativeSpan, "event precedes the component's first commit");
  }
  return timeutil::to_days(event - first_touch);
}

}  // namespace ownerscope::metrics
