#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ownerscope::timeutil {

inline constexpr std::int64_t kSecondsPerDay = 86400;

// Parses "YYYY-MM-DDThh:mm:ss[.frac]" with a Z or +-hh:mm zone suffix to
// unix seconds (UTC).
// Fractional seconds are truncated. Returns nullopt on any grammar or
// range violation; never consults the process timezone.
std::optional<std::int64_t> parse_rfc3339(std::string_view text);

// Unix seconds -> "YYYY-MM-DDThh:mm:ssZ".
std::string format_rfc3339_utc(std::int64_t unix_seconds);

inline double to_days(std::int64_t seconds) {
  return static_cast<double>(seconds) / static_cast<double>(kSecondsPerDay);
}

}  // namespace ownerscope::timeutil
