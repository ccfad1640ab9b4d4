#pragma once

/// @file experiment.hpp
/// @brief Parallel execution of experiment configs.
///
/// Every run gets a seed derived from (base_seed, function, algorithm, n, k,
/// trial) alone, and results are stored by run index, so outputs do not
/// depend on the number of workers.

#include <cstdint>
#include <functional>
#include <string_view>
#include <optional>
#include <vector>

#include "saea/harness/config.hpp"
#include "saea/harness/stats.hpp"

namespace saea::harness {

struct ExperimentResult {
  std::vector<RunRow> runs;          ///< sorted by (function, algorithm, n, k, trial)
  std::vector<SummaryRow> summaries;
};

struct TraceRow {
  std::size_t trial = 0;
  TraceRecord record;
};

struct TraceSummaryRow {
  Fitness fitness = 0;
  double median_rate = 0.0;
  double p95_rate = 0.0;
  std::optional<double> overlay_rate;
};

struct TraceResult {
  ExperimentResult runs;
  std::vector<TraceRow> trace;              ///< sorted by (trial, generation)
  std::vector<TraceSummaryRow> summary;     ///< one row per observed fitness
};

/// Seed of one run.
std::uint64_t run_seed(std::uint64_t base_seed, std::string_view function,
                       std::string_view algorithm, std::size_t n, std::size_t k, std::size_t trial);

/// Runs fn(i) for i in [0, count) on `workers` threads; rethrows the first
/// exception.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn);

/// trials x |k| x |algorithms| runs plus one summary per (algorithm, k).
ExperimentResult run_experiment(const ExperimentConfig& config, unsigned workers = 1);

/// Traced runs of one tracing-capable algorithm at one k, summarised per
/// fitness value over all recorded generations of all trials.
TraceResult run_trace_experiment(const ExperimentConfig& config, unsigned workers = 1);

/// Overlay rate at fitness j for the trace summary, if the config asks for one.
std::optional<double> overlay_rate(const ExperimentConfig& config, const ResolvedAlgorithm& algo,
                                   std::size_t k, Fitness j);

}  // namespace saea::harness
