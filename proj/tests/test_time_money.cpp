#include <gtest/gtest.h>

#include <limits>

#include "peakspread/money.hpp"
#include "peakspread/time_of_day.hpp"

namespace peakspread {
namespace {

TEST(TimeOfDay, ParsesAndFormats) {
  const TimeOfDay t = TimeOfDay::parse("08:45");
  EXPECT_EQ(t.minutes_since_midnight(), 8 * 60 + 45);
  EXPECT_EQ(t.to_string(), "08:45");
  EXPECT_EQ(TimeOfDay::parse("00:00").minutes_since_midnight(), 0);
  EXPECT_EQ(TimeOfDay::parse("23:59").to_string(), "23:59");
}

TEST(TimeOfDay, RejectsMalformedInput) {
  EXPECT_THROW(TimeOfDay::parse("8:45"), ValidationError);
  EXPECT_THROW(TimeOfDay::parse("08-45"), ValidationError);
  EXPECT_THROW(TimeOfDay::parse("24:00"), ValidationError);
  EXPECT_THROW(TimeOfDay::parse("08:60"), ValidationError);
  EXPECT_THROW(TimeOfDay::parse(""), ValidationError);
  EXPECT_THROW(TimeOfDay::from_minutes(-1), ValidationError);
  EXPECT_THROW(TimeOfDay::from_minutes(1440), ValidationError);
}

TEST(TimeOfDay, SubtractionGivesSignedMinutes) {
  const TimeOfDay a = TimeOfDay::parse("08:45");
  const TimeOfDay b = TimeOfDay::parse("07:55");
  EXPECT_EQ((a - b).minutes(), 50);
  EXPECT_EQ((b - a).minutes(), -50);
  EXPECT_LT(b, a);
  EXPECT_EQ(b.plus_minutes(50), a);
  EXPECT_THROW(TimeOfDay::parse("00:10").plus_minutes(-11), ValidationError);
}

TEST(Money, ParsesDecimalDollarsExactly) {
  EXPECT_EQ(Money::parse_dollars("0.2").micro_dollars(), 200000);
  EXPECT_EQ(Money::parse_dollars("3").micro_dollars(), 3000000);
  EXPECT_EQ(Money::parse_dollars("-1.5").micro_dollars(), -1500000);
  EXPECT_EQ(Money::parse_dollars("0.000001").micro_dollars(), 1);
  EXPECT_EQ(Money::parse_dollars(".25").micro_dollars(), 250000);
  EXPECT_THROW(Money::parse_dollars("0.0000001"), ValidationError);
  EXPECT_THROW(Money::parse_dollars("1.2.3"), ValidationError);
  EXPECT_THROW(Money::parse_dollars("abc"), ValidationError);
  EXPECT_THROW(Money::parse_dollars(""), ValidationError);
  EXPECT_THROW(Money::parse_dollars("-"), ValidationError);
}

TEST(Money, FormatsWithoutTrailingZeros) {
  EXPECT_EQ(Money::from_micro(200000).to_string(), "0.2");
  EXPECT_EQ(Money::from_micro(3000000).to_string(), "3");
  EXPECT_EQ(Money::from_micro(1).to_string(), "0.000001");
  EXPECT_EQ(Money::from_micro(-1500000).to_string(), "-1.5");
  EXPECT_EQ(Money::zero().to_string(), "0");
}

TEST(Money, RoundTripsThroughText) {
  const std::int64_t cases[] = {0, 1, -1, 999999, 1000000, 123456789,
                                -42000001};
  for (const std::int64_t micro : cases) {
    const Money m = Money::from_micro(micro);
    EXPECT_EQ(Money::parse_dollars(m.to_string()), m) << m.to_string();
  }
}

TEST(Money, ChecksOverflow) {
  const Money big = Money::from_micro(std::numeric_limits<std::int64_t>::max());
  EXPECT_THROW(big + Money::from_micro(1), ArithmeticError);
  EXPECT_THROW(big.scaled(2), ArithmeticError);
}

TEST(Rate, MultipliesDurationsExactly) {
  const Rate rate = Rate::parse_dollars_per_min("0.02");
  EXPECT_EQ(rate * Duration(50), Money::parse_dollars("1"));
  EXPECT_EQ(rate * Duration(0), Money::zero());
  EXPECT_EQ(Rate::zero() * Duration(1000), Money::zero());
  const Rate huge = Rate::from_micro(1'000'000'000'000);
  EXPECT_THROW(huge * Duration(99'999'999'999'999), ArithmeticError);
}

TEST(Rate, RejectsNegatives) {
  EXPECT_THROW(Rate::from_micro(-1), ValidationError);
  EXPECT_THROW(Rate::parse_dollars_per_min("-0.01"), ValidationError);
}

TEST(Rate, ProhibitiveTakesNoPartInArithmetic) {
  const Rate p = Rate::prohibitive();
  EXPECT_TRUE(p.is_prohibitive());
  EXPECT_FALSE(Rate::zero().is_prohibitive());
  EXPECT_THROW(p * Duration(1), ValidationError);
  EXPECT_THROW(p.micro_per_minute(), ValidationError);
  EXPECT_GT(p, Rate::from_micro(1'000'000'000));
  EXPECT_EQ(p.to_string(), "prohibitive");
}

}  // namespace
}  // namespace peakspread
