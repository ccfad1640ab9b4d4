#include "saea/harness/io.hpp"

#include <charconv>
#include <fstream>

#include "json.hpp"

#include "saea/error.hpp"

namespace saea::harness {
namespace {

using nlohmann::ordered_json;

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void dump(std::ostream& os, const ordered_json& j) { os << j.dump(2) << '\n'; }

}  // namespace

OutputFormat parse_output_format(std::string_view token) {
  if (token == "csv") return OutputFormat::Csv;
  if (token == "json") return OutputFormat::Json;
  throw ConfigError("unknown output format '" + std::string(token) + "'");
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_runs_csv(std::ostream& os, std::span<const RunRow> rows) {
  os << "algorithm,function,n,k,trial,seed,evaluations,success,budget\n";
  for (const auto& r : rows) {
    os << r.algorithm << ',' << r.function << ',' << r.n << ',' << r.k << ',' << r.trial << ','
       << r.record.seed << ',' << r.record.evaluations << ',' << (r.record.success ? "true" : "false")
       << ',' << r.record.budget << '\n';
  }
}

void write_summary_csv(std::ostream& os, std::span<const SummaryRow> rows) {
  os << "algorithm,function,n,k,trials,success_count,median,q1,q3,p95,normalized_median\n";
  for (const auto& s : rows) {
    os << s.algorithm << ',' << s.function << ',' << s.n << ',' << s.k << ',' << s.trials << ','
       << s.success_count << ',' << s.median << ',' << s.q1 << ',' << s.q3 << ',' << s.p95 << ','
       << format_double(s.normalized_median) << '\n';
  }
}

void write_trace_csv(std::ostream& os, std::span<const TraceRow> rows) {
  os << "trial,generation,best_fitness,best_rate\n";
  for (const auto& r : rows) {
    os << r.trial << ',' << r.record.generation << ',' << r.record.best_fitness << ','
       << format_double(r.record.best_rate) << '\n';
  }
}

void write_trace_summary_csv(std::ostream& os, std::span<const TraceSummaryRow> rows) {
  os << "fitness,median_rate,p95_rate,overlay_rate\n";
  for (const auto& r : rows) {
    os << r.fitness << ',' << format_double(r.median_rate) << ',' << format_double(r.p95_rate)
       << ',';
    if (r.overlay_rate) os << format_double(*r.overlay_rate);
    os << '\n';
  }
}

void write_runs_json(std::ostream& os, std::span<const RunRow> rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    arr.push_back({{"algorithm", r.algorithm},
                   {"function", r.function},
                   {"n", r.n},
                   {"k", r.k},
                   {"trial", r.trial},
                   {"seed", r.record.seed},
                   {"evaluations", r.record.evaluations},
                   {"success", r.record.success},
                   {"budget", r.record.budget}});
  }
  dump(os, arr);
}

void write_summary_json(std::ostream& os, std::span<const SummaryRow> rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& s : rows) {
    arr.push_back({{"algorithm", s.algorithm},
                   {"function", s.function},
                   {"n", s.n},
                   {"k", s.k},
                   {"trials", s.trials},
                   {"success_count", s.success_count},
                   {"median", s.median},
                   {"q1", s.q1},
                   {"q3", s.q3},
                   {"p95", s.p95},
                   {"normalized_median", s.normalized_median}});
  }
  dump(os, arr);
}

void write_trace_json(std::ostream& os, std::span<const TraceRow> rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    arr.push_back({{"trial", r.trial},
                   {"generation", r.record.generation},
                   {"best_fitness", r.record.best_fitness},
                   {"best_rate", r.record.best_rate}});
  }
  dump(os, arr);
}

void write_trace_summary_json(std::ostream& os, std::span<const TraceSummaryRow> rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json row = {{"fitness", r.fitness},
                        {"median_rate", r.median_rate},
                        {"p95_rate", r.p95_rate},
                        {"overlay_rate", nullptr}};
    if (r.overlay_rate) row["overlay_rate"] = *r.overlay_rate;
    arr.push_back(std::move(row));
  }
  dump(os, arr);
}

void write_experiment(const std::filesystem::path& dir, const ExperimentResult& result,
                      OutputFormat format) {
  std::filesystem::create_directories(dir);
  if (format == OutputFormat::Csv) {
    auto runs = open_output(dir / "runs.csv");
    write_runs_csv(runs, result.runs);
    auto summary = open_output(dir / "summary.csv");
    write_summary_csv(summary, result.summaries);
  } else {
    auto runs = open_output(dir / "runs.json");
    write_runs_json(runs, result.runs);
    auto summary = open_output(dir / "summary.json");
    write_summary_json(summary, result.summaries);
  }
}

void write_trace(const std::filesystem::path& dir, const TraceResult& result, OutputFormat format) {
  write_experiment(dir, result.runs, format);
  if (format == OutputFormat::Csv) {
    auto trace = open_output(dir / "trace.csv");
    write_trace_csv(trace, result.trace);
    auto summary = open_output(dir / "trace_summary.csv");
    write_trace_summary_csv(summary, result.summary);
  } else {
    auto trace = open_output(dir / "trace.json");
    write_trace_json(trace, result.trace);
    auto summary = open_output(dir / "trace_summary.json");
    write_trace_summary_json(summary, result.summary);
  }
}

}  // namespace saea::harness
