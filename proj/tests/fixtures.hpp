// Shared test fixtures.
#pragma once

#include <vector>

#include "peakspread/arrival_map.hpp"
#include "peakspread/cost_model.hpp"
#include "peakspread/money.hpp"
#include "peakspread/time_of_day.hpp"

namespace fixtures {

using peakspread::ArrivalMap;
using peakspread::Money;
using peakspread::PriceSchedule;
using peakspread::Rate;
using peakspread::TimeOfDay;

// Six 10-minute slots ending at the 08:45 preferred time, thresholds
// 0, 0.02, ..., 0.10 $/min.
inline ArrivalMap six_slot_map() {
  ArrivalMap map;
  map.preferred_time = TimeOfDay::parse("08:45");
  for (int i = 0; i < 6; ++i) {
    map.thresholds.push_back(Rate::from_micro(20000 * i));
    map.slot_times.push_back(map.preferred_time.plus_minutes(-10 * (5 - i)));
  }
  return map;
}

// The schedule realising six_slot_map with a free first slot: prices
// 0, 0.20, 0.60, 1.20, 2, 3 dollars over 07:55..08:45.
inline PriceSchedule six_slot_schedule() {
  PriceSchedule schedule;
  schedule.domain_start = TimeOfDay::parse("07:55");
  schedule.domain_end = TimeOfDay::parse("08:45");
  schedule.step_ends = {TimeOfDay::parse("07:55"), TimeOfDay::parse("08:05"),
                        TimeOfDay::parse("08:15"), TimeOfDay::parse("08:25"),
                        TimeOfDay::parse("08:35"), TimeOfDay::parse("08:45")};
  schedule.step_prices = {
      Money::zero(),               Money::parse_dollars("0.2"),
      Money::parse_dollars("0.6"), Money::parse_dollars("1.2"),
      Money::parse_dollars("2"),   Money::parse_dollars("3")};
  return schedule;
}

// Flat two-level charge: free through 07:59, $3 from 08:00 to the domain
// end. The last free minute is 07:59.
inline PriceSchedule flat_charge_schedule(const char* domain_start = "07:00",
                                          const char* domain_end = "10:30") {
  PriceSchedule schedule;
  schedule.domain_start = TimeOfDay::parse(domain_start);
  schedule.domain_end = TimeOfDay::parse(domain_end);
  schedule.step_ends = {TimeOfDay::parse("07:59"),
                        TimeOfDay::parse(domain_end)};
  schedule.step_prices = {Money::zero(), Money::parse_dollars("3")};
  return schedule;
}

// Single-step schedule with one constant price.
inline PriceSchedule constant_schedule(const char* price_dollars,
                                       const char* domain_start = "07:00",
                                       const char* domain_end = "10:00") {
  PriceSchedule schedule;
  schedule.domain_start = TimeOfDay::parse(domain_start);
  schedule.domain_end = TimeOfDay::parse(domain_end);
  schedule.step_ends = {TimeOfDay::parse(domain_end)};
  schedule.step_prices = {Money::parse_dollars(price_dollars)};
  return schedule;
}

}  // namespace fixtures
