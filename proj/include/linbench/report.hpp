#pragma once

// Reduces suite results to "Operation | Median time (s) | Rank" tables and
// renders them as Markdown, JSON or CSV.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"

#include "linbench/bench.hpp"
#include "linbench/errors.hpp"

namespace linbench {

struct RankRow {
  std::string task_id;
  std::string operation;
  std::string variant;
  TimingStats stats;
  std::size_t rank = 0;
  std::string checksum;

  bool operator==(const RankRow&) const = default;
};

struct RankTable {
  std::string group;
  std::vector<RankRow> rows;

  bool operator==(const RankTable&) const = default;
};

struct FailureRow {
  std::string task_id;
  std::string group;
  std::string operation;
  std::string variant;
  std::string error;

  bool operator==(const FailureRow&) const = default;
};

struct RankedResults {
  std::vector<RankTable> tables;
  std::vector<FailureRow> failures;
};

struct ReportMetadata {
  std::optional<std::uint64_t> seed;
  double scale_factor = 1.0;
  std::string preset = "local";
  std::size_t repetitions = 0;
  std::size_t warmups = 0;
  bool include_generation_in_timing = true;
  std::vector<std::string> coerced_sizes;
  std::string timestamp;
  std::string host;

  bool operator==(const ReportMetadata&) const = default;
};

struct ReportDocument {
  ReportMetadata metadata;
  std::vector<RankTable> tables;
  std::vector<FailureRow> failures;

  bool operator==(const ReportDocument&) const = default;
};

namespace detail {

inline int group_order(const std::string& group) {
  static const std::vector<std::string> known = {"Matrix calculation", "Matrix functions",
                                                 "Programmation", "Solving linear systems",
                                                 "Balassa indices"};
  const auto it = std::find(known.begin(), known.end(), group);
  return it == known.end() ? static_cast<int>(known.size()) : static_cast<int>(it - known.begin());
}

}  // namespace detail

/// Groups results into tables, ranks variants within each task by
/// ascending median (ties by variant name) and lists failures separately.
/// Tables follow the fixed group order; rows are ordered by task id, then
/// rank.
inline RankedResults rank_results(const std::vector<SuiteResult>& results) {
  std::map<std::tuple<int, std::string>, std::map<std::pair<std::string, std::string>,
                                                  std::vector<RankRow>>> grouped;
  RankedResults out;
  for (const auto& r : results) {
    if (!r.stats || r.error) {
      out.failures.push_back({r.task_id, r.group, r.label, r.variant, r.error.value_or("no timing")});
      continue;
    }
    grouped[{detail::group_order(r.group), r.group}][{r.task_id, r.label}].push_back(
        {r.task_id, r.label, r.variant, *r.stats, 0, r.checksum});
  }
  for (auto& [gkey, tasks] : grouped) {
    RankTable table{std::get<1>(gkey), {}};
    for (auto& [tkey, rows] : tasks) {
      std::sort(rows.begin(), rows.end(), [](const RankRow& a, const RankRow& b) {
        if (a.stats.median != b.stats.median) return a.stats.median < b.stats.median;
        return a.variant < b.variant;
      });
      for (std::size_t k = 0; k < rows.size(); ++k) {
        rows[k].rank = k + 1;
        table.rows.push_back(std::move(rows[k]));
      }
    }
    out.tables.push_back(std::move(table));
  }
  return out;
}

inline ReportDocument make_report(const std::vector<SuiteResult>& results, ReportMetadata metadata) {
  for (const auto& r : results) {
    if (r.coercion &&
        std::find(metadata.coerced_sizes.begin(), metadata.coerced_sizes.end(), *r.coercion) ==
            metadata.coerced_sizes.end()) {
      metadata.coerced_sizes.push_back(*r.coercion);
    }
  }
  RankedResults ranked = rank_results(results);
  if (!ranked.tables.empty() && !metadata.seed) {
    throw invalid_argument("make_report: ranked rows need the seed that generated them");
  }
  return {std::move(metadata), std::move(ranked.tables), std::move(ranked.failures)};
}

/// Three decimals from 0.01 s up; below that, scientific with two
/// significant digits ("4.6e-06").
inline std::string format_median(double seconds) {
  char buf[32];
  if (seconds >= 0.01) {
    std::snprintf(buf, sizeof buf, "%.3f", seconds);
  } else {
    std::snprintf(buf, sizeof buf, "%.1e", seconds);
  }
  return buf;
}

inline std::string render_markdown(const ReportDocument& doc) {
  const auto& m = doc.metadata;
  std::ostringstream os;
  os << "# Benchmark report\n\n";
  os << "- seed: " << (m.seed ? std::to_string(*m.seed) : std::string("n/a")) << '\n';
  {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", m.scale_factor);
    os << "- scale factor: " << buf << '\n';
  }
  os << "- preset: " << m.preset << '\n';
  os << "- repetitions: " << m.repetitions << '\n';
  os << "- warmups: " << m.warmups << '\n';
  os << "- data generation timed: " << (m.include_generation_in_timing ? "yes" : "no") << '\n';
  if (!m.timestamp.empty()) os << "- timestamp: " << m.timestamp << '\n';
  if (!m.host.empty()) os << "- host: " << m.host << '\n';
  for (const auto& c : m.coerced_sizes) os << "- coerced: " << c << '\n';

  for (const auto& table : doc.tables) {
    os << "\nTable: " << table.group << "\n\n";
    os << "| Operation | Median time (s) | Rank |\n";
    os << "|:--|--:|--:|\n";
    for (const auto& row : table.rows) {
      os << "| " << row.operation << " - " << row.variant << " | " << format_median(row.stats.median)
         << " | " << row.rank << " |\n";
    }
  }
  if (!doc.failures.empty()) {
    os << "\n## Failures\n\n";
    for (const auto& f : doc.failures) {
      os << "- " << f.operation << " - " << f.variant << ": " << f.error << '\n';
    }
  }
  return os.str();
}

// ---- JSON ----

inline nlohmann::json to_json(const TimingStats& s) {
  return {{"samples", s.samples}, {"median", s.median},   {"mean", s.mean},
          {"min", s.min},         {"max", s.max},         {"stddev", s.stddev},
          {"repetitions", s.repetitions}, {"warmups", s.warmups}};
}

inline TimingStats timing_from_json(const nlohmann::json& j) {
  TimingStats s;
  s.samples = j.at("samples").get<std::vector<double>>();
  s.median = j.at("median").get<double>();
  s.mean = j.at("mean").get<double>();
  s.min = j.at("min").get<double>();
  s.max = j.at("max").get<double>();
  s.stddev = j.at("stddev").get<double>();
  s.repetitions = j.at("repetitions").get<std::size_t>();
  s.warmups = j.at("warmups").get<std::size_t>();
  return s;
}

inline nlohmann::json to_json(const ReportDocument& doc) {
  const auto& m = doc.metadata;
  nlohmann::json meta = {{"scale_factor", m.scale_factor},
                         {"preset", m.preset},
                         {"repetitions", m.repetitions},
                         {"warmups", m.warmups},
                         {"include_generation_in_timing", m.include_generation_in_timing},
                         {"coerced_sizes", m.coerced_sizes},
                         {"timestamp", m.timestamp},
                         {"host", m.host}};
  meta["seed"] = m.seed ? nlohmann::json(*m.seed) : nlohmann::json(nullptr);

  nlohmann::json tables = nlohmann::json::array();
  for (const auto& t : doc.tables) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : t.rows) {
      rows.push_back({{"task", r.task_id},
                      {"operation", r.operation},
                      {"variant", r.variant},
                      {"rank", r.rank},
                      {"checksum", r.checksum},
                      {"stats", to_json(r.stats)}});
    }
    tables.push_back({{"group", t.group}, {"rows", std::move(rows)}});
  }
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : doc.failures) {
    failures.push_back({{"task", f.task_id},
                        {"group", f.group},
                        {"operation", f.operation},
                        {"variant", f.variant},
                        {"error", f.error}});
  }
  return {{"metadata", std::move(meta)}, {"tables", std::move(tables)}, {"failures", std::move(failures)}};
}

/// Inverse of the JSON rendering. Throws invalid_argument on malformed input.
inline ReportDocument parse_report_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    ReportDocument doc;
    const auto& meta = j.at("metadata");
    auto& m = doc.metadata;
    if (!meta.at("seed").is_null()) m.seed = meta.at("seed").get<std::uint64_t>();
    m.scale_factor = meta.at("scale_factor").get<double>();
    m.preset = meta.at("preset").get<std::string>();
    m.repetitions = meta.at("repetitions").get<std::size_t>();
    m.warmups = meta.at("warmups").get<std::size_t>();
    m.include_generation_in_timing = meta.at("include_generation_in_timing").get<bool>();
    m.coerced_sizes = meta.at("coerced_sizes").get<std::vector<std::string>>();
    m.timestamp = meta.at("timestamp").get<std::string>();
    m.host = meta.at("host").get<std::string>();
    for (const auto& t : j.at("tables")) {
      RankTable table{t.at("group").get<std::string>(), {}};
      for (const auto& r : t.at("rows")) {
        table.rows.push_back({r.at("task").get<std::string>(), r.at("operation").get<std::string>(),
                              r.at("variant").get<std::string>(), timing_from_json(r.at("stats")),
                              r.at("rank").get<std::size_t>(), r.at("checksum").get<std::string>()});
      }
      doc.tables.push_back(std::move(table));
    }
    for (const auto& f : j.at("failures")) {
      doc.failures.push_back({f.at("task").get<std::string>(), f.at("group").get<std::string>(),
                              f.at("operation").get<std::string>(), f.at("variant").get<std::string>(),
                              f.at("error").get<std::string>()});
    }
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw invalid_argument(std::string("malformed report JSON: ") + e.what());
  }
}

// ---- CSV ----

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline std::string full_precision(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

inline std::string render_csv(const ReportDocument& doc) {
  using detail::csv_field;
  using detail::full_precision;
  const auto& m = doc.metadata;
  std::ostringstream os;
  os << "# seed=" << (m.seed ? std::to_string(*m.seed) : std::string()) << '\n';
  os << "# scale_factor=" << full_precision(m.scale_factor) << '\n';
  os << "# preset=" << m.preset << '\n';
  os << "# repetitions=" << m.repetitions << '\n';
  os << "# warmups=" << m.warmups << '\n';
  os << "# include_generation_in_timing=" << (m.include_generation_in_timing ? "true" : "false") << '\n';
  for (const auto& c : m.coerced_sizes) os << "# coerced=" << c << '\n';
  os << "# timestamp=" << m.timestamp << '\n';
  os << "# host=" << m.host << '\n';
  os << "group,task,operation,variant,rank,median,mean,min,max,stddev,repetitions,warmups,"
        "checksum,error,samples\n";
  for (const auto& t : doc.tables) {
    for (const auto& r : t.rows) {
      std::string samples;
      for (std::size_t k = 0; k < r.stats.samples.size(); ++k) {
        if (k) samples.push_back(';');
        samples += full_precision(r.stats.samples[k]);
      }
      os << csv_field(t.group) << ',' << csv_field(r.task_id) << ',' << csv_field(r.operation) << ','
         << csv_field(r.variant) << ',' << r.rank << ',' << full_precision(r.stats.median) << ','
         << full_precision(r.stats.mean) << ',' << full_precision(r.stats.min) << ','
         << full_precision(r.stats.max) << ',' << full_precision(r.stats.stddev) << ','
         << r.stats.repetitions << ',' << r.stats.warmups << ',' << r.checksum << ",," << samples
         << '\n';
    }
  }
  for (const auto& f : doc.failures) {
    os << csv_field(f.group) << ',' << csv_field(f.task_id) << ',' << csv_field(f.operation) << ','
       << csv_field(f.variant) << ",,,,,,,,,," << csv_field(f.error) << ",\n";
  }
  return os.str();
}

/// "json" or "csv".
inline std::string render_machine(const ReportDocument& doc, const std::string& format) {
  if (format == "json") return to_json(doc).dump(2) + "\n";
  if (format == "csv") return render_csv(doc);
  throw invalid_argument("unknown report format '" + format + "'");
}

}  // namespace linbench
