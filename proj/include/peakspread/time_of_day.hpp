#pragma once

#include <compare>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

#include "peakspread/errors.hpp"

namespace peakspread {

// Signed span of time in whole minutes.
class Duration {
 public:
  constexpr Duration() = default;
  constexpr explicit Duration(std::int64_t minutes) : minutes_(minutes) {}

  constexpr std::int64_t minutes() const { return minutes_; }

  friend constexpr auto operator<=>(Duration, Duration) = default;
  friend constexpr Duration operator+(Duration a, Duration b) {
    return Duration(a.minutes_ + b.minutes_);
  }
  friend constexpr Duration operator-(Duration a, Duration b) {
    return Duration(a.minutes_ - b.minutes_);
  }

 private:
  std::int64_t minutes_ = 0;
};

// Clock time within a single day, whole-minute resolution. The minute grid
// makes cost comparisons and argmin tie-breaking exact.
class TimeOfDay {
 public:
  static constexpr int kMinutesPerDay = 24 * 60;

  constexpr TimeOfDay() = default;

  static TimeOfDay from_minutes(int minutes_since_midnight) {
    if (minutes_since_midnight < 0 ||
        minutes_since_midnight >= kMinutesPerDay) {
      throw ValidationError("time of day out of range: " +
                            std::to_string(minutes_since_midnight) +
                            " minutes since midnight");
    }
    TimeOfDay t;
    t.minutes_ = minutes_since_midnight;
    return t;
  }

  // Parses strict "HH:MM" (zero-padded, 24-hour).
  static TimeOfDay parse(std::string_view text) {
    if (text.size() != 5 || text[2] != ':' || !is_digit(text[0]) ||
        !is_digit(text[1]) || !is_digit(text[3]) || !is_digit(text[4])) {
      throw ValidationError("expected HH:MM time, got '" + std::string(text) +
                            "'");
    }
    const int hours = (text[0] - '0') * 10 + (text[1] - '0');
    const int minutes = (text[3] - '0') * 10 + (text[4] - '0');
    if (hours >= 24 || minutes >= 60) {
      throw ValidationError("time out of range: '" + std::string(text) + "'");
    }
    return from_minutes(hours * 60 + minutes);
  }

  constexpr int minutes_since_midnight() const { return minutes_; }

  std::string to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%02d:%02d", minutes_ / 60, minutes_ % 60);
    return buf;
  }

  // Shifts by whole minutes; the result must stay within the day.
  TimeOfDay plus_minutes(std::int64_t delta) const {
    const std::int64_t shifted = minutes_ + delta;
    if (shifted < 0 || shifted >= kMinutesPerDay) {
      throw ValidationError("time shift leaves the day: " +
                            to_string() + (delta < 0 ? " - " : " + ") +
                            std::to_string(delta < 0 ? -delta : delta) +
                            " minutes");
    }
    return from_minutes(static_cast<int>(shifted));
  }

  friend constexpr auto operator<=>(TimeOfDay, TimeOfDay) = default;
  friend constexpr Duration operator-(TimeOfDay a, TimeOfDay b) {
    return Duration(a.minutes_ - b.minutes_);
  }

 private:
  static constexpr bool is_digit(char c) { return c >= '0' && c <= '9'; }

  int minutes_ = 0;
};

}  // namespace peakspread
