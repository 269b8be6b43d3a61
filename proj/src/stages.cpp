#include "ownerscope/stages.hpp"

#include <algorithm>

#include "ownerscope/error.hpp"
#include "ownerscope/timeutil.hpp"

namespace ownerscope::metrics {

const char* to_string(TimeStageLabel label) {
  switch (label) {
    case TimeStageLabel::T1: return "T1";
    case TimeStageLabel::T2: return "T2";
    case TimeStageLabel::T3: return "T3";
    case TimeStageLabel::T4: return "T4";
    case TimeStageLabel::T5: return "T5";
  }
  return "?";
}

const char* to_string(OssStageLabel label) {
  switch (label) {
    case OssStageLabel::SI: return "SI";
    case OssStageLabel::TI: return "TI";
    case OssStageLabel::II: return "II";
    case OssStageLabel::IG: return "IG";
    case OssStageLabel::SG: return "SG";
    case OssStageLabel::TG: return "TG";
  }
  return "?";
}

TimeStage time_stage(double days, const Calendar& calendar) {
  if (days < 0.0) {
    raise(ErrorKind::NegativeSpan, "time_stage expects a non-negative duration");
  }
  const double month = calendar.month_days;
  const double year = calendar.year_days;
  TimeStageLabel label;
  if (days >= 3.0 * year) {
    label = TimeStageLabel::T5;
  } else if (days > 9.0 * month) {
    label = TimeStageLabel::T4;
  } else if (days > 3.0 * month) {
    label = TimeStageLabel::T3;
  } else if (days > 7.0) {
    label = TimeStageLabel::T2;
  } else {
    label = TimeStageLabel::T1;
  }
  return {label, static_cast<int>(label)};
}

OssStage oss_stage(const ReleaseTimeline& timeline, const Calendar& calendar) {
  if (timeline.origin > timeline.evaluation) {
    raise(ErrorKind::NegativeSpan, "timeline origin is after its evaluation point");
  }
  const std::int64_t year = static_cast<std::int64_t>(calendar.year_days) *
                            timeutil::kSecondsPerDay;
  const std::int64_t six_months = static_cast<std::int64_t>(6 * calendar.month_days) *
                                  timeutil::kSecondsPerDay;

  std::int64_t first_release = 0, last_release = 0;
  std::int64_t n = 0;
  for (const ReleaseRecord& release : timeline.releases) {
    if (release.timestamp < timeline.origin || release.timestamp > timeline.evaluation) {
      continue;
    }
    if (n == 0) first_release = release.timestamp;
    last_release = release.timestamp;
    ++n;
  }
  const std::int64_t elapsed = timeline.evaluation - timeline.origin;
  const std::int64_t growth = n >= 2 ? last_release - first_release : 0;
  const std::int64_t since_last = n >= 1 ? timeline.evaluation - last_release : 0;

  OssStageLabel label;
  if (n == 0 && elapsed > year) {
    label = OssStageLabel::TI;
  } else if (n == 0) {
    label = OssStageLabel::II;
  } else if (n >= 3 && growth > six_months) {
    label = OssStageLabel::SG;
  } else if ((n == 1 || n == 2) && since_last > year) {
    label = OssStageLabel::TG;
  } else if ((n < 3 && elapsed < year) || (n == 3 && growth < six_months)) {
    label = OssStageLabel::IG;
  } else {
    label = OssStageLabel::SI;
  }
  return {label, static_cast<int>(label)};
}

std::pair<std::int64_t, std::int64_t> release_counts(
    std::span<const ReleaseRecord> releases, std::int64_t project_start,
    std::int64_t first_touch, std::int64_t event) {
  std::int64_t amounts = 0, aged = 0;
  for (const ReleaseRecord& release : releases) {
    if (release.timestamp > event) continue;
    if (release.timestamp >= project_start) ++amounts;
    if (release.timestamp >= first_touch) ++aged;
  }
  return {amounts, aged};
}

std::pair<int, int> pre_post_flags(std::int64_t event,
                                   std::span<const ReleaseRecord> releases) {
  if (releases.empty()) return {0, 0};
  const auto first = std::min_element(releases.begin(), releases.end(),
                                      [](const ReleaseRecord& a, const ReleaseRecord& b) {
                                        return a.timestamp < b.timestamp;
                                      });
  const int pre = event < first->timestamp ? 1 : 0;
  return {pre, 1 - pre};
}

}  // namespace ownerscope::metrics
