#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <string>
#include <vector>

#include "peakspread/errors.hpp"
#include "peakspread/money.hpp"
#include "peakspread/time_of_day.hpp"

namespace peakspread {

// One motorist's cost parameters. Arriving at t costs
//   price(t) + early_rate * (preferred - t)          for t <= preferred
//   price(t) + late_rate * (t - preferred)           for t >  preferred
// plus the constant base_cost. A prohibitive late_rate means late arrival is
// never an option.
struct CostParams {
  Rate early_rate;
  Rate late_rate = Rate::prohibitive();
  TimeOfDay preferred_time;
  Money base_cost;  // additive constant; never affects the argmin

  void validate() const {
    if (base_cost < Money::zero()) {
      throw ValidationError("base cost must be non-negative");
    }
    if (early_rate.is_prohibitive()) {
      throw ValidationError("early rate cannot be prohibitive");
    }
  }
};

// Piecewise-constant road price over a time-of-day domain. Steps are
// left-open and right-closed: step i covers (step_ends[i-1], step_ends[i]]
// and the first step additionally covers [domain_start, step_ends[0]].
// Minutes past the last boundary (up to domain_end) keep the last price, so
// the boundary minute itself is always charged at its own step's price.
struct PriceSchedule {
  std::vector<TimeOfDay> step_ends;
  std::vector<Money> step_prices;
  TimeOfDay domain_start;
  TimeOfDay domain_end;

  void validate() const {
    if (step_ends.empty()) {
      throw ValidationError("price schedule needs at least one step");
    }
    if (step_prices.size() != step_ends.size()) {
      throw ValidationError("price schedule has " +
                            std::to_string(step_ends.size()) + " steps but " +
                            std::to_string(step_prices.size()) + " prices");
    }
    for (std::size_t i = 1; i < step_ends.size(); ++i) {
      if (step_ends[i] <= step_ends[i - 1]) {
        throw ValidationError("schedule step ends must be strictly "
                              "increasing at position " + std::to_string(i));
      }
    }
    for (const Money& p : step_prices) {
      if (p < Money::zero()) {
        throw ValidationError("schedule prices must be non-negative");
      }
    }
    if (domain_start > step_ends.front() || step_ends.back() > domain_end) {
      throw ValidationError(
          "schedule domain [" + domain_start.to_string() + ", " +
          domain_end.to_string() + "] must enclose the step ends");
    }
  }

  // Same steps bound to a different domain.
  PriceSchedule with_domain(TimeOfDay start, TimeOfDay end) const {
    PriceSchedule out = *this;
    out.domain_start = start;
    out.domain_end = end;
    out.validate();
    return out;
  }
};

inline Money price_at(const PriceSchedule& schedule, TimeOfDay t) {
  if (t < schedule.domain_start || t > schedule.domain_end) {
    throw DomainError("time " + t.to_string() + " outside schedule domain [" +
                      schedule.domain_start.to_string() + ", " +
                      schedule.domain_end.to_string() + "]");
  }
  const auto it = std::lower_bound(schedule.step_ends.begin(),
                                   schedule.step_ends.end(), t);
  const std::size_t idx =
      it == schedule.step_ends.end()
          ? schedule.step_ends.size() - 1  // past the last boundary
          : static_cast<std::size_t>(it - schedule.step_ends.begin());
  return schedule.step_prices[idx];
}

inline Money travel_cost(const CostParams& params,
                         const PriceSchedule& schedule, TimeOfDay t) {
  Money cost = price_at(schedule, t) + params.base_cost;
  if (t <= params.preferred_time) {
    cost += params.early_rate * (params.preferred_time - t);
  } else {
    if (params.late_rate.is_prohibitive()) {
      throw DomainError("late arrival at " + t.to_string() +
                        " with a prohibitive late rate");
    }
    cost += params.late_rate * (t - params.preferred_time);
  }
  return cost;
}

namespace detail {

// Latest minimiser over ascending candidate minutes: updating on <= keeps
// the last minute attaining the minimal cost.
template <typename Iter>
TimeOfDay latest_argmin(const CostParams& params, const PriceSchedule& sched,
                        Iter first, Iter last) {
  TimeOfDay best = *first;
  Money best_cost = travel_cost(params, sched, best);
  for (Iter it = std::next(first); it != last; ++it) {
    const Money cost = travel_cost(params, sched, *it);
    if (cost <= best_cost) {
      best = *it;
      best_cost = cost;
    }
  }
  return best;
}

inline TimeOfDay scan_ceiling(const CostParams& params,
                              const PriceSchedule& schedule) {
  if (params.late_rate.is_prohibitive()) {
    if (params.preferred_time < schedule.domain_start) {
      throw DomainError(
          "every minute in the schedule domain is past the preferred time " +
          params.preferred_time.to_string() +
          " and the late rate is prohibitive");
    }
    return std::min(schedule.domain_end, params.preferred_time);
  }
  return schedule.domain_end;
}

}  // namespace detail

// Exhaustive whole-minute argmin of the travel cost over the schedule
// domain. Ties go to the latest minimiser (the arrival closest to the
// preferred time). With a prohibitive late rate the scan stops at the
// preferred time.
inline TimeOfDay optimal_arrival(const CostParams& params,
                                 const PriceSchedule& schedule) {
  params.validate();
  schedule.validate();
  const TimeOfDay ceiling = detail::scan_ceiling(params, schedule);

  TimeOfDay best = schedule.domain_start;
  Money best_cost = travel_cost(params, schedule, best);
  for (int m = schedule.domain_start.minutes_since_midnight() + 1;
       m <= ceiling.minutes_since_midnight(); ++m) {
    const TimeOfDay t = TimeOfDay::from_minutes(m);
    const Money cost = travel_cost(params, schedule, t);
    if (cost <= best_cost) {
      best = t;
      best_cost = cost;
    }
  }
  return best;
}

// Early-preference shortcut. Requires a prohibitive late rate. On a
// constant-price interval the cost is non-increasing toward the preferred
// time (strictly decreasing when early_rate > 0), so only interval right
// endpoints and the scan ceiling can be latest minimisers. Agrees with
// optimal_arrival everywhere its precondition holds.
inline TimeOfDay optimal_arrival_fast(const CostParams& params,
                                      const PriceSchedule& schedule) {
  params.validate();
  schedule.validate();
  if (!params.late_rate.is_prohibitive()) {
    throw ValidationError(
        "optimal_arrival_fast requires a prohibitive late rate; use "
        "optimal_arrival for finite late rates");
  }
  const TimeOfDay ceiling = detail::scan_ceiling(params, schedule);

  std::vector<TimeOfDay> candidates;
  candidates.reserve(schedule.step_ends.size() + 1);
  for (const TimeOfDay end : schedule.step_ends) {
    if (end >= schedule.domain_start && end < ceiling) {
      candidates.push_back(end);
    }
  }
  candidates.push_back(ceiling);
  return detail::latest_argmin(params, schedule, candidates.begin(),
                               candidates.end());
}

}  // namespace peakspread
