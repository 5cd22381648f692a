#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace tweetswing {

using TimePoint = std::chrono::sys_seconds;

/// Parses `YYYY-MM-DDTHH:MM:SS[.fff](Z|+00:00)`; a bare date `YYYY-MM-DD` means midnight UTC.
/// Fractional seconds are truncated. Returns nullopt on anything else.
std::optional<TimePoint> parse_utc(std::string_view text);

/// Renders as `YYYY-MM-DDTHH:MM:SSZ`.
std::string format_utc(TimePoint t);

}  // namespace tweetswing
