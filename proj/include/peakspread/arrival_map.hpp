#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "peakspread/cost_model.hpp"
#include "peakspread/errors.hpp"
#include "peakspread/money.hpp"
#include "peakspread/time_of_day.hpp"

namespace peakspread {

// Monotone step map from a trade-off rate b to an arrival slot: motorists
// with thresholds[i] <= b < thresholds[i+1] take slot_times[i], and
// b >= thresholds.back() takes the last slot. The first threshold is zero
// and the last slot is the preferred time.
struct ArrivalMap {
  std::vector<Rate> thresholds;
  std::vector<TimeOfDay> slot_times;
  TimeOfDay preferred_time;

  void validate() const {
    if (thresholds.empty() || thresholds.size() != slot_times.size()) {
      throw ValidationError("arrival map needs matching, non-empty threshold "
                            "and slot lists");
    }
    if (thresholds.front() != Rate::zero()) {
      throw ValidationError("first arrival-map threshold must be zero");
    }
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
      if (thresholds[i].is_prohibitive()) {
        throw ValidationError("arrival-map thresholds must be finite");
      }
      if (i > 0 && thresholds[i] <= thresholds[i - 1]) {
        throw ValidationError("arrival-map thresholds must be strictly "
                              "increasing at position " + std::to_string(i));
      }
      if (i > 0 && slot_times[i] <= slot_times[i - 1]) {
        throw ValidationError("arrival-map slot times must be strictly "
                              "increasing at position " + std::to_string(i));
      }
    }
    if (slot_times.back() != preferred_time) {
      throw ValidationError("last arrival-map slot (" +
                            slot_times.back().to_string() +
                            ") must equal the preferred time (" +
                            preferred_time.to_string() + ")");
    }
  }

  std::size_t size() const { return thresholds.size(); }
};

// Slot for a given trade-off rate: the bucket [B_i, B_{i+1}) containing b.
inline TimeOfDay map_lookup(const ArrivalMap& map, Rate b) {
  if (b.is_prohibitive()) {
    throw ValidationError("map_lookup takes a finite trade-off rate");
  }
  if (map.thresholds.empty() ||
      map.thresholds.size() != map.slot_times.size()) {
    throw ValidationError("malformed arrival map");
  }
  const auto it = std::upper_bound(map.thresholds.begin(),
                                   map.thresholds.end(), b);
  if (it == map.thresholds.begin()) {
    // b below the first threshold can only happen for maps not starting at
    // zero; clamp to the first slot, matching the zero-threshold convention.
    return map.slot_times.front();
  }
  return map.slot_times[static_cast<std::size_t>(it - map.thresholds.begin()) -
                        1];
}

// Builds the step price schedule that realises the desired map: each step's
// price adds the bucket threshold times the slot gap, so every bucket's
// motorists weakly prefer their own slot. Prices come out strictly
// increasing. The schedule domain is the slot range.
inline PriceSchedule synthesize_prices(const ArrivalMap& map,
                                       Money first_price) {
  map.validate();
  if (first_price < Money::zero()) {
    throw ValidationError("first price must be non-negative");
  }
  PriceSchedule schedule;
  schedule.step_ends = map.slot_times;
  schedule.step_prices.reserve(map.size());
  schedule.step_prices.push_back(first_price);
  for (std::size_t i = 1; i < map.size(); ++i) {
    const Money increment =
        map.thresholds[i] * (map.slot_times[i] - map.slot_times[i - 1]);
    schedule.step_prices.push_back(schedule.step_prices.back() + increment);
  }
  schedule.domain_start = map.slot_times.front();
  schedule.domain_end = map.slot_times.back();
  schedule.validate();
  return schedule;
}

// Arrival map a schedule induces on early-preference motorists, evaluated on
// a finite b grid and compressed into steps. Thresholds are grid-resolution
// approximations of the exact indifference points (each recovered threshold
// is the first grid value at or past the true one). If the grid stops short
// of the last true threshold, the returned map ends below the preferred
// time and will fail ArrivalMap::validate; extend the grid to fix that.
inline ArrivalMap induced_map(const PriceSchedule& schedule,
                              TimeOfDay preferred_time,
                              std::span<const Rate> b_grid) {
  schedule.validate();
  if (b_grid.empty()) {
    throw ValidationError("b grid must be non-empty");
  }
  if (b_grid.front() != Rate::zero()) {
    throw ValidationError("b grid must start at zero");
  }
  for (std::size_t i = 0; i < b_grid.size(); ++i) {
    if (b_grid[i].is_prohibitive()) {
      throw ValidationError("b grid entries must be finite");
    }
    if (i > 0 && b_grid[i] <= b_grid[i - 1]) {
      throw ValidationError("b grid must be strictly increasing");
    }
  }

  ArrivalMap out;
  out.preferred_time = preferred_time;
  for (const Rate b : b_grid) {
    const CostParams params{b, Rate::prohibitive(), preferred_time,
                            Money::zero()};
    const TimeOfDay slot = optimal_arrival_fast(params, schedule);
    if (out.slot_times.empty() || slot != out.slot_times.back()) {
      out.thresholds.push_back(b);
      out.slot_times.push_back(slot);
    }
  }
  return out;
}

// One bucket/slot pair where a schedule fails to realise a map: motorists
// with trade-off rate b in their own bucket would rather take defect_slot.
struct RealizationViolation {
  std::size_t bucket;
  std::size_t defect_slot;
  Rate trade_off;
  Money own_cost;
  Money defect_cost;

  std::string to_string() const {
    return "bucket " + std::to_string(bucket + 1) + " at b=" +
           trade_off.to_string() + " $/min defects to slot " +
           std::to_string(defect_slot + 1) + " (cost " +
           defect_cost.to_string() + " < " + own_cost.to_string() + ")";
  }
};

struct RealizationReport {
  bool passed = false;
  std::optional<RealizationViolation> violation;

  std::string to_string() const {
    return passed ? "realization verified: every bucket weakly prefers its "
                    "own slot"
                  : "realization FAILED: " + violation->to_string();
  }
};

// Checks the exact realisation condition: for every bucket i and slot j,
//   p_i + b (T - T_i)  <=  p_j + b (T - T_j)
// for all b in bucket i. Both sides are affine in b, so checking the bucket
// endpoints {B_i, B_{i+1} - 1 micro} suffices. The last bucket is unbounded
// above, but there the left side's slope (T - T_N) is minimal over all
// slots, so the single check at B_N covers it.
inline RealizationReport verify_realization(const ArrivalMap& map,
                                            const PriceSchedule& schedule) {
  map.validate();
  schedule.validate();
  if (schedule.step_ends != map.slot_times) {
    throw ValidationError(
        "schedule step ends must coincide with the arrival-map slot times");
  }

  const TimeOfDay preferred = map.preferred_time;
  const std::size_t n = map.size();
  for (std::size_t i = 0; i < n; ++i) {
    Rate endpoints[2];
    std::size_t n_endpoints = 1;
    endpoints[0] = map.thresholds[i];
    if (i + 1 < n) {
      endpoints[1] =
          Rate::from_micro(map.thresholds[i + 1].micro_per_minute() - 1);
      n_endpoints = 2;
    }
    for (std::size_t e = 0; e < n_endpoints; ++e) {
      const Rate b = endpoints[e];
      const Money own = schedule.step_prices[i] +
                        b * (preferred - map.slot_times[i]);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const Money other = schedule.step_prices[j] +
                            b * (preferred - map.slot_times[j]);
        if (own > other) {
          return RealizationReport{
              false, RealizationViolation{i, j, b, own, other}};
        }
      }
    }
  }
  return RealizationReport{true, std::nullopt};
}

}  // namespace peakspread
