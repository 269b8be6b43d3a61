#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ownerscope/types.hpp"

namespace ownerscope::metrics {

// Fixed calendar conventions: 1 month = 30 days, 1 year = 365 days, all UTC.
struct Calendar {
  int month_days = 30;
  int year_days = 365;
};

enum class TimeStageLabel { T1 = 1, T2 = 2, T3 = 3, T4 = 4, T5 = 5 };

struct TimeStage {
  TimeStageLabel label = TimeStageLabel::T1;
  int numeric = 1;
};

const char* to_string(TimeStageLabel label);

// Duration buckets:
//   T1: 0 <= d <= 7 days        T2: 7 < d <= 3 months
//   T3: 3 < d <= 9 months       T4: 9 months < d < 3 years
//   T5: d >= 3 years
// Total over non-negative durations; the 3-year tie goes to T5 and d = 0
// classifies as T1.
TimeStage time_stage(double days, const Calendar& calendar = {});

// Lifecycle states in the canonical enumeration order.
enum class OssStageLabel { SI = 1, TI = 2, II = 3, IG = 4, SG = 5, TG = 6 };

struct OssStage {
  OssStageLabel label = OssStageLabel::SI;
  int numeric = 1;
};

const char* to_string(OssStageLabel label);

// Release history seen from a window: origin is the project's first commit,
// or the component's first touch for the aged variant.
struct ReleaseTimeline {
  std::vector<ReleaseRecord> releases;  // sorted ascending
  std::int64_t origin = 0;
  std::int64_t evaluation = 0;
};

// Classification from release count N (releases within [origin, evaluation]),
// elapsed = evaluation - origin, since_last = evaluation - last windowed
// release, growth = last - first windowed release (0 when N < 2).
// Deterministic precedence:
//   (a) N = 0 and elapsed > 1 year          -> TI
//   (b) N = 0                               -> II
//   (c) N >= 3 and growth > 6 months        -> SG
//   (d) N in {1,2} and since_last > 1 year  -> TG
//   (e) (N < 3 and elapsed < 1 year) or (N = 3 and growth < 6 months) -> IG
//   (f) otherwise                           -> SI
OssStage oss_stage(const ReleaseTimeline& timeline, const Calendar& calendar = {});

// (release_amounts, release_amounts_aged): releases within
// [project_start, event] and [first_touch, event] respectively.
std::pair<std::int64_t, std::int64_t> release_counts(
    std::span<const ReleaseRecord> releases, std::int64_t project_start,
    std::int64_t first_touch, std::int64_t event);

// (is_pre_release, is_post_release) anchored to the first release;
// (0,0) when the project has no releases.
std::pair<int, int> pre_post_flags(std::int64_t event,
                                   std::span<const ReleaseRecord> releases);

}  // namespace ownerscope::metrics
