#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "peakspread/arrival_map.hpp"
#include "peakspread/calibration.hpp"
#include "peakspread/cost_model.hpp"
#include "peakspread/distribution.hpp"
#include "peakspread/errors.hpp"
#include "peakspread/simulation.hpp"
#include "peakspread/version.hpp"

namespace peakspread {

// Provenance header written as CSV comments: tool version, a hash of the
// effective inputs, and the seed (zero for commands that draw nothing).
struct OutputStamp {
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
};

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

namespace detail {

inline std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

inline void write_stamp(std::ostream& out, const OutputStamp* stamp) {
  if (stamp == nullptr) return;
  out << "# peakspread," << kVersion << '\n';
  out << "# config_hash," << hex64(stamp->config_hash) << '\n';
  out << "# seed," << stamp->seed << '\n';
}

// Splits one CSV line; no quoting, formats here never need it.
inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string::size_type start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

// Line-oriented CSV scanner: tracks line numbers, strips carriage returns,
// separates '#' comments from data rows.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Next non-blank line; comments land in comments(), data rows return true.
  bool next_row(std::vector<std::string>& fields) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      if (line[0] == '#') {
        comments_.push_back(line.substr(1));
        continue;
      }
      fields = split_fields(line);
      return true;
    }
    return false;
  }

  int line_number() const { return line_number_; }
  const std::vector<std::string>& comments() const { return comments_; }

  // First comment of the form "key,rest...", split into fields after the key.
  std::vector<std::string> comment_fields(std::string_view key) const {
    for (const std::string& comment : comments_) {
      std::string trimmed = comment;
      const auto first = trimmed.find_first_not_of(' ');
      if (first == std::string::npos) continue;
      trimmed = trimmed.substr(first);
      const auto fields = split_fields(trimmed);
      if (!fields.empty() && fields[0] == key) {
        return {fields.begin() + 1, fields.end()};
      }
    }
    return {};
  }

 private:
  std::istream& in_;
  int line_number_ = 0;
  std::vector<std::string> comments_;
};

inline void expect_header(CsvReader& reader, const std::string& expected) {
  std::vector<std::string> fields;
  if (!reader.next_row(fields)) {
    throw ParseError(reader.line_number() + 1,
                     "missing header '" + expected + "'");
  }
  std::string joined;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) joined += ',';
    joined += fields[i];
  }
  if (joined != expected) {
    throw ParseError(reader.line_number(),
                     "expected header '" + expected + "', got '" + joined +
                         "'");
  }
}

inline double parse_count(const std::string& text, int line) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    if (!(value >= 0.0)) {
      throw ParseError(line, "count must be non-negative, got '" + text + "'");
    }
    return value;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError(line, "bad count '" + text + "'");
  }
}

}  // namespace detail

// --- Price schedule CSV: `# domain,HH:MM,HH:MM` then `end_time,price_dollars`.

inline void write_price_schedule_csv(std::ostream& out,
                                     const PriceSchedule& schedule,
                                     const OutputStamp* stamp = nullptr) {
  schedule.validate();
  detail::write_stamp(out, stamp);
  out << "# domain," << schedule.domain_start.to_string() << ','
      << schedule.domain_end.to_string() << '\n';
  out << "end_time,price_dollars\n";
  for (std::size_t i = 0; i < schedule.step_ends.size(); ++i) {
    out << schedule.step_ends[i].to_string() << ','
        << schedule.step_prices[i].to_string() << '\n';
  }
}

inline PriceSchedule read_price_schedule_csv(std::istream& in) {
  detail::CsvReader reader(in);
  detail::expect_header(reader, "end_time,price_dollars");

  PriceSchedule schedule;
  std::vector<std::string> fields;
  while (reader.next_row(fields)) {
    if (fields.size() != 2) {
      throw ParseError(reader.line_number(), "expected 'end_time,price'");
    }
    try {
      schedule.step_ends.push_back(TimeOfDay::parse(fields[0]));
      schedule.step_prices.push_back(Money::parse_dollars(fields[1]));
    } catch (const ValidationError& err) {
      throw ParseError(reader.line_number(), err.what());
    }
  }
  const auto domain = reader.comment_fields("domain");
  if (domain.size() != 2) {
    throw ValidationError(
        "schedule file needs a '# domain,HH:MM,HH:MM' comment");
  }
  schedule.domain_start = TimeOfDay::parse(domain[0]);
  schedule.domain_end = TimeOfDay::parse(domain[1]);
  schedule.validate();
  return schedule;
}

// --- Arrival map CSV: `# preferred,HH:MM` then
// `threshold_dollars_per_min,slot_time`.

inline void write_arrival_map_csv(std::ostream& out, const ArrivalMap& map,
                                  const OutputStamp* stamp = nullptr) {
  detail::write_stamp(out, stamp);
  out << "# preferred," << map.preferred_time.to_string() << '\n';
  out << "threshold_dollars_per_min,slot_time\n";
  for (std::size_t i = 0; i < map.thresholds.size(); ++i) {
    out << map.thresholds[i].to_string() << ','
        << map.slot_times[i].to_string() << '\n';
  }
}

inline ArrivalMap read_arrival_map_csv(std::istream& in) {
  detail::CsvReader reader(in);
  detail::expect_header(reader, "threshold_dollars_per_min,slot_time");

  ArrivalMap map;
  std::vector<std::string> fields;
  while (reader.next_row(fields)) {
    if (fields.size() != 2) {
      throw ParseError(reader.line_number(), "expected 'threshold,slot_time'");
    }
    try {
      map.thresholds.push_back(Rate::parse_dollars_per_min(fields[0]));
      map.slot_times.push_back(TimeOfDay::parse(fields[1]));
    } catch (const ValidationError& err) {
      throw ParseError(reader.line_number(), err.what());
    }
  }
  const auto preferred = reader.comment_fields("preferred");
  if (preferred.size() != 1) {
    throw ValidationError("map file needs a '# preferred,HH:MM' comment");
  }
  map.preferred_time = TimeOfDay::parse(preferred[0]);
  map.validate();
  return map;
}

// --- Flow CSV: `time,count`, duplicate times averaged, output sorted.

inline std::vector<FlowObservation> ingest_flow_csv(std::istream& in) {
  detail::CsvReader reader(in);
  detail::expect_header(reader, "time,count");

  std::map<TimeOfDay, std::pair<double, std::size_t>> sums;
  std::vector<std::string> fields;
  while (reader.next_row(fields)) {
    if (fields.size() != 2) {
      throw ParseError(reader.line_number(), "expected 'time,count'");
    }
    TimeOfDay t;
    try {
      t = TimeOfDay::parse(fields[0]);
    } catch (const ValidationError& err) {
      throw ParseError(reader.line_number(), err.what());
    }
    const double count = detail::parse_count(fields[1], reader.line_number());
    auto& cell = sums[t];
    cell.first += count;
    cell.second += 1;
  }
  if (sums.empty()) {
    throw ValidationError("flow file holds no observations");
  }
  std::vector<FlowObservation> observations;
  observations.reserve(sums.size());
  for (const auto& [time, cell] : sums) {
    observations.push_back(
        {time, cell.first / static_cast<double>(cell.second)});
  }
  return observations;
}

// --- Histogram CSV: `bin_start,count[,fraction]`.

inline void write_histogram_csv(std::ostream& out, const FlowHistogram& hist,
                                bool include_fraction,
                                const OutputStamp* stamp = nullptr) {
  detail::write_stamp(out, stamp);
  out << (include_fraction ? "bin_start,count,fraction\n"
                           : "bin_start,count\n");
  const std::vector<double> fractions = hist.fractions();
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    out << hist.bin_starts[i].to_string() << ',' << hist.counts[i];
    if (include_fraction) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.9f", fractions[i]);
      out << ',' << buf;
    }
    out << '\n';
  }
}

// --- Calibration curve CSV: `sigma,mu` in dollars per minute.

inline void write_calibration_csv(std::ostream& out,
                                  const std::vector<TruncatedGaussian>& curve,
                                  const OutputStamp* stamp = nullptr) {
  detail::write_stamp(out, stamp);
  out << "sigma,mu\n";
  for (const TruncatedGaussian& dist : curve) {
    out << dist.stddev_rate().to_string() << ','
        << dist.mean_rate().to_string() << '\n';
  }
}

// --- Filesystem wrappers.

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw IoError("failed reading " + path.string());
  }
  return buffer.str();
}

inline void write_text_file(const std::filesystem::path& path,
                            const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot create " + path.string());
  }
  out << contents;
  out.flush();
  if (!out) {
    throw IoError("failed writing " + path.string());
  }
}

inline PriceSchedule load_price_schedule_csv(
    const std::filesystem::path& path) {
  std::istringstream in(read_text_file(path));
  return read_price_schedule_csv(in);
}

inline ArrivalMap load_arrival_map_csv(const std::filesystem::path& path) {
  std::istringstream in(read_text_file(path));
  return read_arrival_map_csv(in);
}

inline std::vector<FlowObservation> load_flow_csv(
    const std::filesystem::path& path) {
  std::istringstream in(read_text_file(path));
  return ingest_flow_csv(in);
}

}  // namespace peakspread
