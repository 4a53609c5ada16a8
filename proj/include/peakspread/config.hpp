#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "peakspread/calibration.hpp"
#include "peakspread/cost_model.hpp"
#include "peakspread/distribution.hpp"
#include "peakspread/errors.hpp"
#include "peakspread/io.hpp"
#include "peakspread/simulation.hpp"

namespace peakspread {

// Fully resolved simulation run: schedule loaded/synthesised, population
// settled, all parameters bound. Built from the JSON schema below; unknown
// keys anywhere are rejected.
//
// {
//   "domain":         {"start": "07:55", "end": "08:45"},
//   "preferred_time": "08:45",
//   "population":     {"b_distribution": {"mean_dollars_per_min": 0.051,
//                                         "sigma_dollars_per_min": 0.02}}
//                  or {"classes": [{"early_rate_dollars_per_min": 0.01,
//                                   "late_rate_dollars_per_min": "prohibitive",
//                                   "weight": 0.4,
//                                   "preferred_time": "08:45"}, ...]},
//   "schedule":       {"path": "prices.csv"}
//                  or {"steps": [{"end": "07:59", "price_dollars": 0}, ...]}
//                  or {"equal_load": {"slot_times": ["07:55", ...],
//                                     "first_price_dollars": 0}},
//   "simulation":     {"n_draws": 1000000, "noise_sigma_minutes": 0,
//                      "seed": 42, "bin_minutes": 10},
//   "output":         {"histogram_csv": "hist.csv", "include_fraction": true}
// }
struct RunConfig {
  TimeOfDay domain_start;
  TimeOfDay domain_end;
  TimeOfDay preferred_time;

  std::optional<TruncatedGaussian> b_distribution;  // continuous population
  std::vector<PopulationClass> classes;             // or a finite mixture

  PriceSchedule schedule;
  std::vector<TimeOfDay> equal_load_slots;  // non-empty in equal-load mode

  std::uint64_t n_draws = 0;
  double noise_sigma_minutes = 0.0;
  std::uint64_t seed = 0;
  int bin_minutes = 1;

  std::optional<std::string> histogram_csv;
  bool include_fraction = true;

  bool equal_load_mode() const { return !equal_load_slots.empty(); }
};

namespace detail {

using nlohmann::json;

inline void reject_unknown_keys(const json& object, const char* where,
                                std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : object.items()) {
    bool known = false;
    for (const char* name : allowed) {
      if (key == name) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ValidationError(std::string("unknown key '") + key + "' in " +
                            where);
    }
  }
}

inline const json& require(const json& object, const char* key,
                           const char* where) {
  const auto it = object.find(key);
  if (it == object.end()) {
    throw ValidationError(std::string("missing key '") + key + "' in " +
                          where);
  }
  return *it;
}

inline std::string require_string(const json& object, const char* key,
                                  const char* where) {
  const json& value = require(object, key, where);
  if (!value.is_string()) {
    throw ValidationError(std::string("'") + key + "' in " + where +
                          " must be a string");
  }
  return value.get<std::string>();
}

inline double require_number(const json& object, const char* key,
                             const char* where) {
  const json& value = require(object, key, where);
  if (!value.is_number()) {
    throw ValidationError(std::string("'") + key + "' in " + where +
                          " must be a number");
  }
  return value.get<double>();
}

inline std::uint64_t require_uint(const json& object, const char* key,
                                  const char* where) {
  const json& value = require(object, key, where);
  if (!value.is_number_unsigned()) {
    throw ValidationError(std::string("'") + key + "' in " + where +
                          " must be a non-negative integer");
  }
  return value.get<std::uint64_t>();
}

inline Rate rate_from_json(const json& value, const char* where) {
  if (value.is_string() && value.get<std::string>() == "prohibitive") {
    return Rate::prohibitive();
  }
  if (!value.is_number()) {
    throw ValidationError(std::string(where) +
                          " must be a number (or \"prohibitive\")");
  }
  return Rate::from_dollars_per_min(value.get<double>());
}

inline TruncatedGaussian parse_b_distribution(const json& spec) {
  if (!spec.is_object()) {
    throw ValidationError("'b_distribution' must be an object");
  }
  reject_unknown_keys(spec, "b_distribution",
                      {"mean_dollars_per_min", "sigma_dollars_per_min",
                       "truncated_at_zero"});
  if (spec.contains("truncated_at_zero") &&
      spec["truncated_at_zero"] != json(true)) {
    throw ValidationError(
        "'truncated_at_zero' can only be true: the distribution is always "
        "truncated at zero");
  }
  const Rate mean = Rate::from_dollars_per_min(
      require_number(spec, "mean_dollars_per_min", "b_distribution"));
  const Rate sigma = Rate::from_dollars_per_min(
      require_number(spec, "sigma_dollars_per_min", "b_distribution"));
  return TruncatedGaussian(mean, sigma);
}

inline std::vector<PopulationClass> parse_classes(const json& list,
                                                  TimeOfDay default_preferred) {
  if (!list.is_array() || list.empty()) {
    throw ValidationError("'classes' must be a non-empty array");
  }
  std::vector<PopulationClass> classes;
  classes.reserve(list.size());
  for (const json& spec : list) {
    if (!spec.is_object()) {
      throw ValidationError("each population class must be an object");
    }
    reject_unknown_keys(spec, "population class",
                        {"early_rate_dollars_per_min",
                         "late_rate_dollars_per_min", "weight",
                         "preferred_time"});
    PopulationClass cls;
    cls.cost.early_rate = rate_from_json(
        require(spec, "early_rate_dollars_per_min", "population class"),
        "'early_rate_dollars_per_min'");
    cls.cost.late_rate =
        spec.contains("late_rate_dollars_per_min")
            ? rate_from_json(spec["late_rate_dollars_per_min"],
                             "'late_rate_dollars_per_min'")
            : Rate::prohibitive();
    cls.cost.preferred_time =
        spec.contains("preferred_time")
            ? TimeOfDay::parse(
                  require_string(spec, "preferred_time", "population class"))
            : default_preferred;
    cls.weight = require_number(spec, "weight", "population class");
    classes.push_back(cls);
  }
  return classes;
}

}  // namespace detail

// Parses and resolves a run configuration. Relative schedule paths are
// resolved against base_dir (normally the config file's directory).
inline RunConfig parse_run_config(const nlohmann::json& root,
                                  const std::filesystem::path& base_dir) {
  using detail::require;
  using detail::require_number;
  using detail::require_string;
  using detail::require_uint;

  if (!root.is_object()) {
    throw ValidationError("run config must be a JSON object");
  }
  detail::reject_unknown_keys(root, "run config",
                              {"domain", "preferred_time", "population",
                               "schedule", "simulation", "output"});

  RunConfig config;

  const nlohmann::json& domain = require(root, "domain", "run config");
  detail::reject_unknown_keys(domain, "domain", {"start", "end"});
  config.domain_start =
      TimeOfDay::parse(require_string(domain, "start", "domain"));
  config.domain_end = TimeOfDay::parse(require_string(domain, "end", "domain"));
  if (config.domain_end < config.domain_start) {
    throw ValidationError("domain end precedes domain start");
  }

  config.preferred_time =
      TimeOfDay::parse(require_string(root, "preferred_time", "run config"));

  const nlohmann::json& population = require(root, "population", "run config");
  detail::reject_unknown_keys(population, "population",
                              {"b_distribution", "classes"});
  const bool has_dist = population.contains("b_distribution");
  const bool has_classes = population.contains("classes");
  if (has_dist == has_classes) {
    throw ValidationError(
        "population needs exactly one of 'b_distribution' or 'classes'");
  }
  if (has_dist) {
    config.b_distribution =
        detail::parse_b_distribution(population["b_distribution"]);
  } else {
    config.classes =
        detail::parse_classes(population["classes"], config.preferred_time);
  }

  const nlohmann::json& schedule = require(root, "schedule", "run config");
  detail::reject_unknown_keys(schedule, "schedule",
                              {"path", "steps", "equal_load"});
  const int sources = (schedule.contains("path") ? 1 : 0) +
                      (schedule.contains("steps") ? 1 : 0) +
                      (schedule.contains("equal_load") ? 1 : 0);
  if (sources != 1) {
    throw ValidationError(
        "schedule needs exactly one of 'path', 'steps', or 'equal_load'");
  }
  if (schedule.contains("path")) {
    const std::filesystem::path path =
        base_dir / require_string(schedule, "path", "schedule");
    config.schedule = load_price_schedule_csv(path).with_domain(
        config.domain_start, config.domain_end);
  } else if (schedule.contains("steps")) {
    const nlohmann::json& steps = schedule["steps"];
    if (!steps.is_array() || steps.empty()) {
      throw ValidationError("'steps' must be a non-empty array");
    }
    for (const nlohmann::json& step : steps) {
      detail::reject_unknown_keys(step, "schedule step",
                                  {"end", "price_dollars"});
      config.schedule.step_ends.push_back(
          TimeOfDay::parse(require_string(step, "end", "schedule step")));
      config.schedule.step_prices.push_back(Money::from_dollars(
          require_number(step, "price_dollars", "schedule step")));
    }
    config.schedule.domain_start = config.domain_start;
    config.schedule.domain_end = config.domain_end;
    config.schedule.validate();
  } else {
    const nlohmann::json& equal_load = schedule["equal_load"];
    detail::reject_unknown_keys(equal_load, "equal_load",
                                {"slot_times", "first_price_dollars"});
    if (!config.b_distribution.has_value()) {
      throw ValidationError(
          "equal_load schedules need a 'b_distribution' population");
    }
    const nlohmann::json& slots =
        require(equal_load, "slot_times", "equal_load");
    if (!slots.is_array() || slots.empty()) {
      throw ValidationError("'slot_times' must be a non-empty array");
    }
    for (const nlohmann::json& slot : slots) {
      if (!slot.is_string()) {
        throw ValidationError("slot times must be HH:MM strings");
      }
      config.equal_load_slots.push_back(
          TimeOfDay::parse(slot.get<std::string>()));
    }
    const Money first_price =
        equal_load.contains("first_price_dollars")
            ? Money::from_dollars(require_number(
                  equal_load, "first_price_dollars", "equal_load"))
            : Money::zero();
    const ArrivalMap map =
        equal_load_map(*config.b_distribution, config.equal_load_slots,
                       config.preferred_time);
    config.schedule = synthesize_prices(map, first_price)
                          .with_domain(config.domain_start, config.domain_end);
  }

  const nlohmann::json& simulation = require(root, "simulation", "run config");
  detail::reject_unknown_keys(
      simulation, "simulation",
      {"n_draws", "noise_sigma_minutes", "seed", "bin_minutes"});
  config.n_draws = require_uint(simulation, "n_draws", "simulation");
  config.noise_sigma_minutes =
      simulation.contains("noise_sigma_minutes")
          ? require_number(simulation, "noise_sigma_minutes", "simulation")
          : 0.0;
  config.seed = simulation.contains("seed")
                    ? require_uint(simulation, "seed", "simulation")
                    : 0;
  config.bin_minutes =
      simulation.contains("bin_minutes")
          ? static_cast<int>(require_uint(simulation, "bin_minutes",
                                          "simulation"))
          : 1;

  if (root.contains("output")) {
    const nlohmann::json& output = root["output"];
    detail::reject_unknown_keys(output, "output",
                                {"histogram_csv", "include_fraction"});
    if (output.contains("histogram_csv")) {
      config.histogram_csv = require_string(output, "histogram_csv", "output");
    }
    if (output.contains("include_fraction")) {
      const nlohmann::json& flag = output["include_fraction"];
      if (!flag.is_boolean()) {
        throw ValidationError("'include_fraction' must be a boolean");
      }
      config.include_fraction = flag.get<bool>();
    }
  }

  return config;
}

inline RunConfig load_run_config(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ValidationError("bad JSON in " + path.string() + ": " + err.what());
  }
  return parse_run_config(root, path.parent_path());
}

// Stable description of everything that determines the simulation's output
// (worker count and output destinations excluded). Hash this for the
// `# config_hash` output comment.
inline std::string canonical_description(const RunConfig& config) {
  std::ostringstream out;
  out << "domain=" << config.domain_start.to_string() << ".."
      << config.domain_end.to_string() << '\n';
  out << "preferred=" << config.preferred_time.to_string() << '\n';
  if (config.b_distribution.has_value()) {
    out << "b_distribution=" << config.b_distribution->mean_rate().to_string()
        << ',' << config.b_distribution->stddev_rate().to_string() << '\n';
  }
  for (const PopulationClass& cls : config.classes) {
    out << "class=" << cls.cost.early_rate.to_string() << ','
        << cls.cost.late_rate.to_string() << ','
        << cls.cost.preferred_time.to_string() << ',';
    char weight[32];
    std::snprintf(weight, sizeof(weight), "%.17g", cls.weight);
    out << weight << '\n';
  }
  for (std::size_t i = 0; i < config.schedule.step_ends.size(); ++i) {
    out << "step=" << config.schedule.step_ends[i].to_string() << ','
        << config.schedule.step_prices[i].to_string() << '\n';
  }
  char noise[32];
  std::snprintf(noise, sizeof(noise), "%.17g", config.noise_sigma_minutes);
  out << "n_draws=" << config.n_draws << '\n'
      << "noise_sigma_minutes=" << noise << '\n'
      << "seed=" << config.seed << '\n'
      << "bin_minutes=" << config.bin_minutes << '\n';
  return out.str();
}

}  // namespace peakspread
