#pragma once

/// @file io.hpp
/// @brief CSV and JSON writers for experiment outputs.

#include <filesystem>
#include <ostream>
#include <span>
#include <string>

#include "saea/harness/experiment.hpp"

namespace saea::harness {

enum class OutputFormat { Csv, Json };

OutputFormat parse_output_format(std::string_view token);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

void write_runs_csv(std::ostream& os, std::span<const RunRow> rows);
void write_summary_csv(std::ostream& os, std::span<const SummaryRow> rows);
void write_trace_csv(std::ostream& os, std::span<const TraceRow> rows);
void write_trace_summary_csv(std::ostream& os, std::span<const TraceSummaryRow> rows);

void write_runs_json(std::ostream& os, std::span<const RunRow> rows);
void write_summary_json(std::ostream& os, std::span<const SummaryRow> rows);
void write_trace_json(std::ostream& os, std::span<const TraceRow> rows);
void write_trace_summary_json(std::ostream& os, std::span<const TraceSummaryRow> rows);

/// Writes runs and summary files (runs.csv, summary.csv or .json) into dir.
void write_experiment(const std::filesystem::path& dir, const ExperimentResult& result,
                      OutputFormat format);

/// Writes trace and trace_summary files into dir.
void write_trace(const std::filesystem::path& dir, const TraceResult& result, OutputFormat format);

}  // namespace saea::harness
