#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "peakspread/arrival_map.hpp"
#include "peakspread/distribution.hpp"
#include "peakspread/errors.hpp"
#include "peakspread/money.hpp"
#include "peakspread/time_of_day.hpp"

namespace peakspread {

// One averaged reading of a traffic counter.
struct FlowObservation {
  TimeOfDay time;
  double vehicle_count = 0.0;
};

// Mean observed count within [center - window, center + window] minutes.
// Throws when the window holds no observation.
inline double window_mean(std::span<const FlowObservation> observations,
                          TimeOfDay center, int window_minutes) {
  if (window_minutes < 0) {
    throw ValidationError("window must be non-negative");
  }
  const int lo = center.minutes_since_midnight() - window_minutes;
  const int hi = center.minutes_since_midnight() + window_minutes;
  double sum = 0.0;
  std::size_t n = 0;
  for (const FlowObservation& obs : observations) {
    const int m = obs.time.minutes_since_midnight();
    if (m >= lo && m <= hi) {
      sum += obs.vehicle_count;
      ++n;
    }
  }
  if (n == 0) {
    throw ValidationError("no flow observations within " +
                          std::to_string(window_minutes) + " minutes of " +
                          center.to_string());
  }
  return sum / static_cast<double>(n);
}

// Ratio of mean flow around the pre-charge peak to mean flow around the
// preferred-time peak.
inline double peak_ratio(std::span<const FlowObservation> observations,
                         TimeOfDay pre_time, TimeOfDay peak_time,
                         int window_minutes) {
  const double pre = window_mean(observations, pre_time, window_minutes);
  const double peak = window_mean(observations, peak_time, window_minutes);
  if (peak <= 0.0) {
    throw ValidationError("zero flow around " + peak_time.to_string() +
                          "; peak ratio undefined");
  }
  return pre / peak;
}

// Fits the trade-off-rate distribution from a single observed flow ratio.
// For each candidate sigma, finds the mean mu >= 0 whose zero-truncated
// Gaussian puts mass on the two sides of the indifference threshold in the
// observed proportion:
//   cdf(threshold) / (1 - cdf(threshold)) = ratio.
// The CDF at a fixed point falls monotonically in mu, so bisection applies.
// Sigmas for which even mu = 0 leaves too little mass below the threshold
// are reported as infeasible.
inline std::vector<TruncatedGaussian> calibrate_from_ratio(
    double ratio_pre_to_peak, Rate threshold, std::span<const Rate> sigma_grid) {
  if (!(ratio_pre_to_peak > 0.0) || !std::isfinite(ratio_pre_to_peak)) {
    throw ValidationError("flow ratio must be a positive finite number");
  }
  if (threshold <= Rate::zero() || threshold.is_prohibitive()) {
    throw ValidationError("indifference threshold must be positive");
  }
  if (sigma_grid.empty()) {
    throw ValidationError("sigma grid must be non-empty");
  }

  const double target = ratio_pre_to_peak / (1.0 + ratio_pre_to_peak);
  const double b_star = threshold.to_dollars_per_min();

  std::vector<TruncatedGaussian> curve;
  curve.reserve(sigma_grid.size());
  for (const Rate sigma_rate : sigma_grid) {
    if (sigma_rate <= Rate::zero() || sigma_rate.is_prohibitive()) {
      throw ValidationError("sigma grid entries must be positive");
    }
    const double sigma = sigma_rate.to_dollars_per_min();
    const auto cdf_at = [&](double mu) {
      const double below_zero = normal::cdf(-mu / sigma);
      return (normal::cdf((b_star - mu) / sigma) - below_zero) /
             (1.0 - below_zero);
    };

    if (cdf_at(0.0) < target) {
      throw InfeasibleError(
          "sigma " + sigma_rate.to_string() +
          " $/min cannot reproduce ratio " + std::to_string(ratio_pre_to_peak) +
          ": even mean 0 puts too little mass below the threshold " +
          threshold.to_string() + " $/min");
    }

    double lo = 0.0;
    double hi = b_star + 10.0 * sigma;
    while (cdf_at(hi) >= target) hi *= 2.0;
    // 120 halvings shrink the bracket far below the 1e-9 relative target.
    for (int iter = 0; iter < 120; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (cdf_at(mid) >= target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double mu = 0.5 * (lo + hi);
    curve.emplace_back(Rate::from_dollars_per_min(mu), sigma_rate);
  }
  return curve;
}

// Arrival map whose buckets each capture probability mass 1/N under the
// given distribution, so synthesised prices load all slots equally.
inline ArrivalMap equal_load_map(const TruncatedGaussian& dist,
                                 std::span<const TimeOfDay> slot_times,
                                 TimeOfDay preferred_time) {
  if (slot_times.empty()) {
    throw ValidationError("equal-load map needs at least one slot");
  }
  for (std::size_t i = 1; i < slot_times.size(); ++i) {
    if (slot_times[i] <= slot_times[i - 1]) {
      throw ValidationError("slot times must be strictly increasing");
    }
  }
  if (slot_times.back() != preferred_time) {
    throw ValidationError("last slot must equal the preferred time");
  }

  const std::size_t n = slot_times.size();
  ArrivalMap map;
  map.slot_times.assign(slot_times.begin(), slot_times.end());
  map.preferred_time = preferred_time;
  map.thresholds.reserve(n);
  map.thresholds.push_back(Rate::zero());
  for (std::size_t i = 1; i < n; ++i) {
    const double q = dist.quantile(static_cast<double>(i) /
                                   static_cast<double>(n));
    map.thresholds.push_back(Rate::from_dollars_per_min(q));
  }
  map.validate();  // adjacent quantiles could collide on the fixed-point grid
  return map;
}

}  // namespace peakspread
