#include "peakspread/cost_model.hpp"

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracle.hpp"

namespace peakspread {
namespace {

using fixtures::constant_schedule;
using fixtures::flat_charge_schedule;
using fixtures::six_slot_schedule;

TEST(PriceAt, BoundaryMinuteCarriesItsOwnStepPrice) {
  const PriceSchedule schedule = six_slot_schedule();
  // Steps are right-closed: the boundary minute pays its own step.
  EXPECT_EQ(price_at(schedule, TimeOfDay::parse("07:55")), Money::zero());
  EXPECT_EQ(price_at(schedule, TimeOfDay::parse("07:56")),
            Money::parse_dollars("0.2"));
  EXPECT_EQ(price_at(schedule, TimeOfDay::parse("08:05")),
            Money::parse_dollars("0.2"));
  EXPECT_EQ(price_at(schedule, TimeOfDay::parse("08:06")),
            Money::parse_dollars("0.6"));
  EXPECT_EQ(price_at(schedule, TimeOfDay::parse("08:45")),
            Money::parse_dollars("3"));
}

TEST(PriceAt, ConstantScheduleIsConstant) {
  const PriceSchedule schedule = constant_schedule("1");
  for (const char* t : {"07:00", "08:13", "10:00"}) {
    EXPECT_EQ(price_at(schedule, TimeOfDay::parse(t)),
              Money::parse_dollars("1"));
  }
}

TEST(PriceAt, MatchesLinearScanOracleOnEveryMinute) {
  const PriceSchedule schedule = flat_charge_schedule();
  for (int m = schedule.domain_start.minutes_since_midnight();
       m <= schedule.domain_end.minutes_since_midnight(); ++m) {
    const Money mine = price_at(schedule, TimeOfDay::from_minutes(m));
    EXPECT_NEAR(mine.to_dollars(), oracle::price_dollars_at(schedule, m),
                1e-12);
  }
}

TEST(PriceAt, RejectsTimesOutsideDomain) {
  const PriceSchedule schedule = six_slot_schedule();
  EXPECT_THROW(price_at(schedule, TimeOfDay::parse("07:54")), DomainError);
  EXPECT_THROW(price_at(schedule, TimeOfDay::parse("08:46")), DomainError);
}

TEST(PriceSchedule, ValidatesShape) {
  PriceSchedule schedule = six_slot_schedule();
  schedule.step_ends[2] = schedule.step_ends[1];
  EXPECT_THROW(schedule.validate(), ValidationError);

  schedule = six_slot_schedule();
  schedule.step_prices.pop_back();
  EXPECT_THROW(schedule.validate(), ValidationError);

  schedule = six_slot_schedule();
  schedule.domain_start = TimeOfDay::parse("08:00");  // excludes first step end
  EXPECT_THROW(schedule.validate(), ValidationError);

  schedule = six_slot_schedule();
  schedule.step_prices[0] = Money::parse_dollars("-0.5");
  EXPECT_THROW(schedule.validate(), ValidationError);
}

TEST(TravelCost, PeakArrivalPaysPeakPrice) {
  // Mean-rate motorist arriving exactly at the preferred time pays only the
  // peak charge.
  const CostParams params{Rate::parse_dollars_per_min("0.051"),
                          Rate::prohibitive(), TimeOfDay::parse("08:45"),
                          Money::zero()};
  EXPECT_EQ(travel_cost(params, six_slot_schedule(), TimeOfDay::parse("08:45")),
            Money::parse_dollars("3"));
}

TEST(TravelCost, ZeroLatenessTermAtPreferredTime) {
  const CostParams params{Rate::parse_dollars_per_min("0.08"),
                          Rate::parse_dollars_per_min("0.5"),
                          TimeOfDay::parse("08:25"), Money::zero()};
  const PriceSchedule schedule = six_slot_schedule();
  EXPECT_EQ(travel_cost(params, schedule, params.preferred_time),
            price_at(schedule, params.preferred_time));
}

TEST(TravelCost, EarlyArrivalChargesPerMinute) {
  const CostParams params{Rate::parse_dollars_per_min("0.02"),
                          Rate::prohibitive(), TimeOfDay::parse("08:45"),
                          Money::zero()};
  // 50 minutes early on the free step: 0 + 0.02 * 50 = $1.
  EXPECT_EQ(travel_cost(params, six_slot_schedule(), TimeOfDay::parse("07:55")),
            Money::parse_dollars("1"));
}

TEST(TravelCost, LateArrivalUsesLateRateAndBaseCost) {
  const CostParams params{Rate::parse_dollars_per_min("0.10"),
                          Rate::parse_dollars_per_min("0.04"),
                          TimeOfDay::parse("08:00"),
                          Money::parse_dollars("0.75")};
  const PriceSchedule schedule = constant_schedule("1");
  // 1 + 0.04 * 30 + 0.75
  EXPECT_EQ(travel_cost(params, schedule, TimeOfDay::parse("08:30")),
            Money::parse_dollars("2.95"));
}

TEST(TravelCost, ProhibitiveLateRateForbidsLateEvaluation) {
  const CostParams params{Rate::parse_dollars_per_min("0.02"),
                          Rate::prohibitive(), TimeOfDay::parse("08:00"),
                          Money::zero()};
  EXPECT_THROW(
      travel_cost(params, constant_schedule("1"), TimeOfDay::parse("08:01")),
      DomainError);
}

TEST(TravelCost, StrictlyDecreasingTowardPreferredOnConstantStep) {
  const CostParams params{Rate::parse_dollars_per_min("0.03"),
                          Rate::prohibitive(), TimeOfDay::parse("08:45"),
                          Money::zero()};
  const PriceSchedule schedule = flat_charge_schedule("07:00", "08:45");
  // Slope is exactly -b1 per minute within a constant-price interval.
  for (int m = 8 * 60; m < 8 * 60 + 45; ++m) {
    const Money here = travel_cost(params, schedule, TimeOfDay::from_minutes(m));
    const Money next =
        travel_cost(params, schedule, TimeOfDay::from_minutes(m + 1));
    EXPECT_EQ(here - next, Money::parse_dollars("0.03"));
  }
}

TEST(OptimalArrival, DodgesChargeWhenTimeIsCheap) {
  // Cheap time, lateness unacceptable: arrive at the last free minute.
  const CostParams params{Rate::parse_dollars_per_min("0.005"),
                          Rate::prohibitive(), TimeOfDay::parse("08:45"),
                          Money::zero()};
  const PriceSchedule schedule = flat_charge_schedule();
  EXPECT_EQ(optimal_arrival(params, schedule), TimeOfDay::parse("07:59"));
}

TEST(OptimalArrival, FreeRoadMeansPreferredTime) {
  const CostParams params{Rate::parse_dollars_per_min("0.04"),
                          Rate::parse_dollars_per_min("0.20"),
                          TimeOfDay::parse("08:45"), Money::zero()};
  EXPECT_EQ(optimal_arrival(params, constant_schedule("0")),
            TimeOfDay::parse("08:45"));
}

TEST(OptimalArrival, SixSlotScheduleMidRate) {
  // b1 = 0.03 $/min on the six-slot schedule: slot costs are
  // 1.50, 1.40, 1.50, 1.80, 2.30, 3.00 dollars, so 08:05 wins. Frozen from
  // the brute-force oracle.
  const CostParams params{Rate::parse_dollars_per_min("0.03"),
                          Rate::prohibitive(), TimeOfDay::parse("08:45"),
                          Money::zero()};
  const PriceSchedule schedule = six_slot_schedule();
  EXPECT_EQ(oracle::brute_force_latest_argmin(0.03, -1.0, 8 * 60 + 45,
                                              schedule),
            8 * 60 + 5);
  EXPECT_EQ(optimal_arrival(params, schedule), TimeOfDay::parse("08:05"));
}

TEST(OptimalArrival, ExactTieGoesToLaterMinute) {
  // b1 = 0.02 makes 07:55 and 08:05 cost exactly $1 each; the later minute
  // wins.
  const CostParams params{Rate::parse_dollars_per_min("0.02"),
                          Rate::prohibitive(), TimeOfDay::parse("08:45"),
                          Money::zero()};
  const PriceSchedule schedule = six_slot_schedule();
  EXPECT_EQ(travel_cost(params, schedule, TimeOfDay::parse("07:55")),
            travel_cost(params, schedule, TimeOfDay::parse("08:05")));
  EXPECT_EQ(optimal_arrival(params, schedule), TimeOfDay::parse("08:05"));
  EXPECT_EQ(optimal_arrival_fast(params, schedule), TimeOfDay::parse("08:05"));
}

TEST(OptimalArrival, LateSideBeatsPayingWhenLatenessIsCheap) {
  PriceSchedule schedule = flat_charge_schedule("07:00", "11:00");
  schedule.step_ends = {TimeOfDay::parse("07:59"), TimeOfDay::parse("09:59"),
                        TimeOfDay::parse("11:00")};
  schedule.step_prices = {Money::zero(), Money::parse_dollars("3"),
                          Money::zero()};
  const CostParams params{Rate::parse_dollars_per_min("0.12"),
                          Rate::parse_dollars_per_min("0.02"),
                          TimeOfDay::parse("08:45"), Money::zero()};
  // Waiting out the window costs 0.02 * 75 = $1.50 < $3.
  EXPECT_EQ(optimal_arrival(params, schedule), TimeOfDay::parse("10:00"));
}

TEST(OptimalArrival, ProhibitiveLateRateWithPreferredBeforeDomainThrows) {
  const CostParams params{Rate::parse_dollars_per_min("0.02"),
                          Rate::prohibitive(), TimeOfDay::parse("06:00"),
                          Money::zero()};
  EXPECT_THROW(optimal_arrival(params, constant_schedule("1")), DomainError);
  EXPECT_THROW(optimal_arrival_fast(params, constant_schedule("1")),
               DomainError);
}

TEST(OptimalArrivalFast, RequiresProhibitiveLateRate) {
  const CostParams params{Rate::parse_dollars_per_min("0.02"),
                          Rate::parse_dollars_per_min("0.5"),
                          TimeOfDay::parse("08:45"), Money::zero()};
  EXPECT_THROW(optimal_arrival_fast(params, six_slot_schedule()),
               ValidationError);
}

TEST(OptimalArrivalFast, ZeroEarlyRatePicksLatestCheapestMinute) {
  const CostParams params{Rate::zero(), Rate::prohibitive(),
                          TimeOfDay::parse("08:45"), Money::zero()};
  const PriceSchedule schedule = flat_charge_schedule();
  // Price alone decides; the latest free minute is 07:59.
  EXPECT_EQ(optimal_arrival_fast(params, schedule), TimeOfDay::parse("07:59"));
  EXPECT_EQ(optimal_arrival(params, schedule), TimeOfDay::parse("07:59"));
}

TEST(OptimalArrivalFast, PreferredTimePastDomainEndCapsTheScan) {
  const CostParams params{Rate::parse_dollars_per_min("0.09"),
                          Rate::prohibitive(), TimeOfDay::parse("10:00"),
                          Money::zero()};
  const PriceSchedule schedule = six_slot_schedule();  // ends 08:45
  EXPECT_EQ(optimal_arrival_fast(params, schedule),
            optimal_arrival(params, schedule));
  EXPECT_EQ(optimal_arrival_fast(params, schedule), TimeOfDay::parse("08:45"));
}

PriceSchedule random_schedule(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n_steps(1, 8);
  std::uniform_int_distribution<int> start_minute(6 * 60, 8 * 60);
  std::uniform_int_distribution<int> gap(1, 40);
  std::uniform_int_distribution<std::int64_t> price_micro(0, 5'000'000);

  PriceSchedule schedule;
  const int n = n_steps(rng);
  int minute = start_minute(rng);
  schedule.domain_start = TimeOfDay::from_minutes(minute);
  for (int i = 0; i < n; ++i) {
    minute += gap(rng);
    schedule.step_ends.push_back(TimeOfDay::from_minutes(minute));
    schedule.step_prices.push_back(Money::from_micro(price_micro(rng)));
  }
  schedule.domain_end = TimeOfDay::from_minutes(minute + gap(rng) - 1);
  if (schedule.domain_end < schedule.step_ends.back()) {
    schedule.domain_end = schedule.step_ends.back();
  }
  return schedule;
}

TEST(OptimalArrivalFast, AgreesWithGridScanOnRandomEarlyPreferenceInstances) {
  std::mt19937_64 rng(20240817);
  std::uniform_int_distribution<std::int64_t> rate_micro(0, 200'000);
  int checked = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const PriceSchedule schedule = random_schedule(rng);
    const int start = schedule.domain_start.minutes_since_midnight();
    const int end = schedule.domain_end.minutes_since_midnight();
    std::uniform_int_distribution<int> preferred(start, end);
    const CostParams params{Rate::from_micro(rate_micro(rng)),
                            Rate::prohibitive(),
                            TimeOfDay::from_minutes(preferred(rng)),
                            Money::zero()};
    const TimeOfDay fast = optimal_arrival_fast(params, schedule);
    const TimeOfDay grid = optimal_arrival(params, schedule);
    ASSERT_EQ(fast, grid) << "trial " << trial;
    ASSERT_EQ(grid.minutes_since_midnight(),
              oracle::brute_force_latest_argmin(
                  params.early_rate.to_dollars_per_min(), -1.0,
                  params.preferred_time.minutes_since_midnight(), schedule))
        << "trial " << trial;
    ++checked;
  }
  EXPECT_EQ(checked, 2000);
}

TEST(OptimalArrival, InvariantUnderPositiveCostScaling) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::int64_t> rate_micro(0, 150'000);
  for (int trial = 0; trial < 200; ++trial) {
    const PriceSchedule schedule = random_schedule(rng);
    const int start = schedule.domain_start.minutes_since_midnight();
    const int end = schedule.domain_end.minutes_since_midnight();
    std::uniform_int_distribution<int> preferred(start, end);
    CostParams params{Rate::from_micro(rate_micro(rng)), Rate::prohibitive(),
                      TimeOfDay::from_minutes(preferred(rng)),
                      Money::from_micro(rate_micro(rng))};
    const TimeOfDay baseline = optimal_arrival(params, schedule);

    for (const std::int64_t factor : {2, 7}) {
      PriceSchedule scaled = schedule;
      for (Money& price : scaled.step_prices) price = price.scaled(factor);
      CostParams scaled_params{params.early_rate.scaled(factor),
                               Rate::prohibitive(), params.preferred_time,
                               params.base_cost.scaled(factor)};
      EXPECT_EQ(optimal_arrival(scaled_params, scaled), baseline);
    }
  }
}

}  // namespace
}  // namespace peakspread
