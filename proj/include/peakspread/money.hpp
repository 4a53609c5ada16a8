#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>
#include <string_view>

#include "peakspread/errors.hpp"
#include "peakspread/time_of_day.hpp"

namespace peakspread {
namespace fixed_point {

inline constexpr std::int64_t kMicroPerUnit = 1'000'000;

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw ArithmeticError("fixed-point addition overflow");
  }
  return out;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_sub_overflow(a, b, &out)) {
    throw ArithmeticError("fixed-point subtraction overflow");
  }
  return out;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw ArithmeticError("fixed-point multiplication overflow");
  }
  return out;
}

// Parses a decimal with at most six fractional digits into micro units.
// Accepts forms like "3", "0.2", "-1.5", ".25".
inline std::int64_t parse_micro(std::string_view text) {
  const std::string original(text);
  const auto fail = [&original]() -> std::int64_t {
    throw ValidationError("expected a decimal with at most 6 fractional "
                          "digits, got '" + original + "'");
  };
  bool negative = false;
  if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
    negative = text[0] == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) return fail();

  std::int64_t whole = 0;
  std::size_t i = 0;
  bool any_digit = false;
  for (; i < text.size() && text[i] != '.'; ++i) {
    if (text[i] < '0' || text[i] > '9') return fail();
    whole = checked_add(checked_mul(whole, 10), text[i] - '0');
    any_digit = true;
  }
  std::int64_t frac = 0;
  if (i < text.size()) {  // saw '.'
    ++i;
    std::size_t frac_digits = 0;
    for (; i < text.size(); ++i, ++frac_digits) {
      if (text[i] < '0' || text[i] > '9' || frac_digits >= 6) return fail();
      frac = frac * 10 + (text[i] - '0');
      any_digit = true;
    }
    for (; frac_digits < 6; ++frac_digits) frac *= 10;
  }
  if (!any_digit) return fail();
  const std::int64_t magnitude =
      checked_add(checked_mul(whole, kMicroPerUnit), frac);
  return negative ? -magnitude : magnitude;
}

// Formats micro units as a decimal, trailing fractional zeros trimmed.
inline std::string format_micro(std::int64_t micro) {
  const bool negative = micro < 0;
  // Avoid overflow at INT64_MIN by peeling digits from the negative value.
  std::uint64_t magnitude =
      negative ? ~static_cast<std::uint64_t>(micro) + 1
               : static_cast<std::uint64_t>(micro);
  std::uint64_t whole = magnitude / kMicroPerUnit;
  std::uint64_t frac = magnitude % kMicroPerUnit;
  std::string out = negative ? "-" : "";
  out += std::to_string(whole);
  if (frac != 0) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%06llu",
                  static_cast<unsigned long long>(frac));
    std::string digits(buf);
    while (digits.back() == '0') digits.pop_back();
    out += '.';
    out += digits;
  }
  return out;
}

// Nearest micro unit for a config-supplied double (ties away from zero).
inline std::int64_t micro_from_double(double units) {
  const double scaled = units * static_cast<double>(kMicroPerUnit);
  if (!std::isfinite(scaled) || scaled >= 9.2e18 || scaled <= -9.2e18) {
    throw ArithmeticError("value out of fixed-point range");
  }
  return std::llround(scaled);
}

}  // namespace fixed_point

// Exact amount of money: signed 64-bit count of micro-dollars. Comparisons
// are exact, so cost ties are decided deterministically.
class Money {
 public:
  constexpr Money() = default;

  static constexpr Money from_micro(std::int64_t micro_dollars) {
    Money m;
    m.micro_ = micro_dollars;
    return m;
  }
  static Money parse_dollars(std::string_view text) {
    return from_micro(fixed_point::parse_micro(text));
  }
  static Money from_dollars(double dollars) {
    return from_micro(fixed_point::micro_from_double(dollars));
  }
  static constexpr Money zero() { return Money(); }

  constexpr std::int64_t micro_dollars() const { return micro_; }
  double to_dollars() const { return static_cast<double>(micro_) * 1e-6; }
  std::string to_string() const { return fixed_point::format_micro(micro_); }

  friend constexpr auto operator<=>(Money, Money) = default;
  friend Money operator+(Money a, Money b) {
    return from_micro(fixed_point::checked_add(a.micro_, b.micro_));
  }
  friend Money operator-(Money a, Money b) {
    return from_micro(fixed_point::checked_sub(a.micro_, b.micro_));
  }
  Money& operator+=(Money other) { return *this = *this + other; }

  // Scales by a positive integer factor (used by scaling-invariance checks).
  Money scaled(std::int64_t factor) const {
    return from_micro(fixed_point::checked_mul(micro_, factor));
  }

 private:
  std::int64_t micro_ = 0;
};

// Willingness-to-pay rate in micro-dollars per minute, never negative.
// Rate::prohibitive() marks a lateness penalty so large that late arrival is
// never considered; it takes part in no arithmetic.
class Rate {
 public:
  constexpr Rate() = default;

  static Rate from_micro(std::int64_t micro_per_minute) {
    if (micro_per_minute < 0) {
      throw ValidationError("rate must be non-negative, got " +
                            fixed_point::format_micro(micro_per_minute) +
                            " dollars per minute");
    }
    if (micro_per_minute == kProhibitive) {
      throw ValidationError("rate value reserved for the prohibitive mark");
    }
    Rate r;
    r.micro_ = micro_per_minute;
    return r;
  }
  static Rate parse_dollars_per_min(std::string_view text) {
    return from_micro(fixed_point::parse_micro(text));
  }
  static Rate from_dollars_per_min(double value) {
    return from_micro(fixed_point::micro_from_double(value));
  }
  static constexpr Rate zero() { return Rate(); }
  static constexpr Rate prohibitive() {
    Rate r;
    r.micro_ = kProhibitive;
    return r;
  }

  constexpr bool is_prohibitive() const { return micro_ == kProhibitive; }
  std::int64_t micro_per_minute() const {
    require_finite();
    return micro_;
  }
  double to_dollars_per_min() const {
    require_finite();
    return static_cast<double>(micro_) * 1e-6;
  }
  std::string to_string() const {
    return is_prohibitive() ? "prohibitive" : fixed_point::format_micro(micro_);
  }

  friend constexpr auto operator<=>(Rate, Rate) = default;

  friend Money operator*(Rate rate, Duration minutes) {
    rate.require_finite();
    return Money::from_micro(
        fixed_point::checked_mul(rate.micro_, minutes.minutes()));
  }

  Rate scaled(std::int64_t factor) const {
    if (is_prohibitive()) return *this;
    return from_micro(fixed_point::checked_mul(micro_, factor));
  }

 private:
  static constexpr std::int64_t kProhibitive =
      std::numeric_limits<std::int64_t>::max();

  void require_finite() const {
    if (is_prohibitive()) {
      throw ValidationError("prohibitive rate used as a number");
    }
  }

  std::int64_t micro_ = 0;
};

}  // namespace peakspread
