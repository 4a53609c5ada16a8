#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "peakspread/cost_model.hpp"
#include "peakspread/distribution.hpp"
#include "peakspread/errors.hpp"
#include "peakspread/rng.hpp"
#include "peakspread/time_of_day.hpp"

namespace peakspread {

// Binned arrival counts over a schedule domain. Bins are bin_minutes wide,
// aligned to the domain start; the last bin is truncated when the domain
// length is not a multiple of the width. Counts always sum to the number of
// draws: arrivals pushed outside the domain by noise are clamped to the
// nearest edge.
struct FlowHistogram {
  std::vector<TimeOfDay> bin_starts;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
  int bin_minutes = 1;

  std::vector<double> fractions() const {
    std::vector<double> out(counts.size(), 0.0);
    if (total == 0) return out;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      out[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
    }
    return out;
  }
};

// Indices of the histogram's local maxima. A maximal run of equal positive
// counts is one maximum when both flanking bins (or edges) are lower.
inline std::vector<std::size_t> local_maxima(const FlowHistogram& histogram) {
  const auto& c = histogram.counts;
  std::vector<std::size_t> maxima;
  for (std::size_t i = 0; i < c.size();) {
    std::size_t j = i;
    while (j + 1 < c.size() && c[j + 1] == c[i]) ++j;
    const bool rises = i == 0 || c[i - 1] < c[i];
    const bool falls = j + 1 == c.size() || c[j + 1] < c[i];
    if (c[i] > 0 && rises && falls) {
      maxima.push_back(i);  // report the run's first bin
    }
    i = j + 1;
  }
  return maxima;
}

// Monte Carlo over a continuous trade-off-rate population. Each draw samples
// b, takes the early-preference optimal arrival under the schedule, adds
// Gaussian arrival noise, and lands in a bin.
struct SimulationConfig {
  std::uint64_t n_draws = 0;
  TruncatedGaussian b_distribution{Rate::from_micro(1), Rate::from_micro(1)};
  TimeOfDay preferred_time;
  PriceSchedule schedule;
  double noise_sigma_minutes = 0.0;
  std::uint64_t seed = 0;
  int bin_minutes = 1;

  void validate() const {
    schedule.validate();
    if (n_draws == 0) throw ValidationError("need at least one draw");
    if (bin_minutes < 1) throw ValidationError("bin width must be >= 1 minute");
    if (!(noise_sigma_minutes >= 0.0) ||
        !std::isfinite(noise_sigma_minutes)) {
      throw ValidationError("noise sigma must be a non-negative number");
    }
    if (preferred_time < schedule.domain_start) {
      throw ValidationError("preferred time precedes the schedule domain");
    }
  }
};

// One deterministic sub-population: fixed cost parameters and a mixture
// weight.
struct PopulationClass {
  CostParams cost;
  double weight = 1.0;
};

// Monte Carlo over a finite mixture of motorist classes.
struct MixtureSimulationConfig {
  std::uint64_t n_draws = 0;
  std::vector<PopulationClass> classes;
  PriceSchedule schedule;
  double noise_sigma_minutes = 0.0;
  std::uint64_t seed = 0;
  int bin_minutes = 1;

  void validate() const {
    schedule.validate();
    if (n_draws == 0) throw ValidationError("need at least one draw");
    if (bin_minutes < 1) throw ValidationError("bin width must be >= 1 minute");
    if (!(noise_sigma_minutes >= 0.0) ||
        !std::isfinite(noise_sigma_minutes)) {
      throw ValidationError("noise sigma must be a non-negative number");
    }
    if (classes.empty()) throw ValidationError("need at least one class");
    for (const PopulationClass& cls : classes) {
      cls.cost.validate();
      if (!(cls.weight > 0.0) || !std::isfinite(cls.weight)) {
        throw ValidationError("class weights must be positive");
      }
    }
  }
};

namespace detail {

inline FlowHistogram empty_histogram(const PriceSchedule& schedule,
                                     int bin_minutes) {
  FlowHistogram hist;
  hist.bin_minutes = bin_minutes;
  const int start = schedule.domain_start.minutes_since_midnight();
  const int end = schedule.domain_end.minutes_since_midnight();
  for (int m = start; m <= end; m += bin_minutes) {
    hist.bin_starts.push_back(TimeOfDay::from_minutes(m));
  }
  hist.counts.assign(hist.bin_starts.size(), 0);
  return hist;
}

// Applies Gaussian arrival noise and clamps to the schedule domain.
inline int noisy_arrival_minute(TimeOfDay optimal, double noise_sigma,
                                double uniform, const PriceSchedule& sched) {
  long long minute = optimal.minutes_since_midnight();
  if (noise_sigma > 0.0) {
    const double noisy = static_cast<double>(minute) +
                         noise_sigma * normal::quantile(uniform);
    minute = std::llround(noisy);
  }
  const long long lo = sched.domain_start.minutes_since_midnight();
  const long long hi = sched.domain_end.minutes_since_midnight();
  return static_cast<int>(std::clamp(minute, lo, hi));
}

// Runs draw_minute(index) for every index, accumulating bin counts across
// workers. Each worker owns a private count vector over a contiguous index
// block; the merge is an integer vector sum, so the result is identical for
// every worker count.
template <typename DrawMinute>
FlowHistogram run_binned(std::uint64_t n_draws, const PriceSchedule& schedule,
                         int bin_minutes, int workers,
                         DrawMinute&& draw_minute) {
  FlowHistogram hist = empty_histogram(schedule, bin_minutes);
  const int domain_start = schedule.domain_start.minutes_since_midnight();
  const std::size_t n_bins = hist.counts.size();

  const std::uint64_t worker_count =
      std::min<std::uint64_t>(std::max(workers, 1), n_draws);
  const std::uint64_t chunk = (n_draws + worker_count - 1) / worker_count;

  std::vector<std::vector<std::uint64_t>> partials(
      worker_count, std::vector<std::uint64_t>(n_bins, 0));
  std::vector<std::thread> threads;
  threads.reserve(worker_count);
  for (std::uint64_t w = 0; w < worker_count; ++w) {
    const std::uint64_t begin = w * chunk;
    const std::uint64_t end = std::min(n_draws, begin + chunk);
    threads.emplace_back([&, w, begin, end] {
      std::vector<std::uint64_t>& local = partials[w];
      for (std::uint64_t i = begin; i < end; ++i) {
        const int minute = draw_minute(i);
        local[static_cast<std::size_t>((minute - domain_start) /
                                       bin_minutes)] += 1;
      }
    });
  }
  for (std::thread& t : threads) t.join();

  for (const auto& local : partials) {
    for (std::size_t bin = 0; bin < n_bins; ++bin) {
      hist.counts[bin] += local[bin];
    }
  }
  hist.total = n_draws;
  return hist;
}

}  // namespace detail

inline FlowHistogram run_simulation(const SimulationConfig& config,
                                    int workers = 1) {
  config.validate();
  const CounterRng rng(config.seed);
  const auto draw_minute = [&](std::uint64_t i) {
    const double b_value =
        config.b_distribution.sample(rng.uniform01(i, CounterRng::kStreamPrimary));
    const CostParams params{Rate::from_dollars_per_min(b_value),
                            Rate::prohibitive(), config.preferred_time,
                            Money::zero()};
    const TimeOfDay best = optimal_arrival_fast(params, config.schedule);
    return detail::noisy_arrival_minute(
        best, config.noise_sigma_minutes,
        rng.uniform01(i, CounterRng::kStreamNoise), config.schedule);
  };
  return detail::run_binned(config.n_draws, config.schedule,
                            config.bin_minutes, workers, draw_minute);
}

inline FlowHistogram run_mixture_simulation(
    const MixtureSimulationConfig& config, int workers = 1) {
  config.validate();

  // Class parameters are fixed, so each class's optimal arrival is a
  // constant; resolve them once. Classes with finite late rates need the
  // full-domain scan.
  double total_weight = 0.0;
  for (const PopulationClass& cls : config.classes) total_weight += cls.weight;
  std::vector<double> cumulative;
  std::vector<TimeOfDay> arrivals;
  cumulative.reserve(config.classes.size());
  arrivals.reserve(config.classes.size());
  double running = 0.0;
  for (const PopulationClass& cls : config.classes) {
    running += cls.weight / total_weight;
    cumulative.push_back(running);
    arrivals.push_back(cls.cost.late_rate.is_prohibitive()
                           ? optimal_arrival_fast(cls.cost, config.schedule)
                           : optimal_arrival(cls.cost, config.schedule));
  }
  cumulative.back() = 1.0;

  const CounterRng rng(config.seed);
  const auto draw_minute = [&](std::uint64_t i) {
    const double u = rng.uniform01(i, CounterRng::kStreamPrimary);
    const std::size_t cls =
        static_cast<std::size_t>(std::lower_bound(cumulative.begin(),
                                                  cumulative.end(), u) -
                                 cumulative.begin());
    return detail::noisy_arrival_minute(
        arrivals[cls], config.noise_sigma_minutes,
        rng.uniform01(i, CounterRng::kStreamNoise), config.schedule);
  };
  return detail::run_binned(config.n_draws, config.schedule,
                            config.bin_minutes, workers, draw_minute);
}

// Canned regression scenario: a flat charge window inside a free morning,
// and three classes of motorists — price-averse early arrivers, punctual
// payers, and late-tolerant motorists who wait the window out. The
// histogram peaks at the last free minute before the window, the preferred
// time, and the first free minute after the window.
inline MixtureSimulationConfig three_peak_config(std::uint64_t n_draws,
                                                 std::uint64_t seed) {
  PriceSchedule schedule;
  schedule.domain_start = TimeOfDay::parse("07:00");
  schedule.domain_end = TimeOfDay::parse("11:00");
  schedule.step_ends = {TimeOfDay::parse("07:59"), TimeOfDay::parse("09:59"),
                        TimeOfDay::parse("11:00")};
  schedule.step_prices = {Money::zero(), Money::parse_dollars("3"),
                          Money::zero()};

  const TimeOfDay preferred = TimeOfDay::parse("08:45");
  MixtureSimulationConfig config;
  config.n_draws = n_draws;
  config.seed = seed;
  config.schedule = schedule;
  config.noise_sigma_minutes = 0.0;
  config.bin_minutes = 1;
  config.classes = {
      // Cheap time: dodge the charge, arrive just before it starts.
      {CostParams{Rate::parse_dollars_per_min("0.01"), Rate::prohibitive(),
                  preferred, Money::zero()},
       0.40},
      // Time dear, lateness unacceptable: pay the peak charge.
      {CostParams{Rate::parse_dollars_per_min("0.12"), Rate::prohibitive(),
                  preferred, Money::zero()},
       0.35},
      // Lateness cheap: wait out the window, arrive when it lifts.
      {CostParams{Rate::parse_dollars_per_min("0.12"),
                  Rate::parse_dollars_per_min("0.02"), preferred,
                  Money::zero()},
       0.25},
  };
  return config;
}

inline FlowHistogram three_peak_scenario(std::uint64_t n_draws,
                                         std::uint64_t seed,
                                         int workers = 1) {
  return run_mixture_simulation(three_peak_config(n_draws, seed), workers);
}

}  // namespace peakspread
