#pragma once

/// @file stats.hpp
/// @brief Order statistics and summaries of run records.
///
/// Quantiles use the lower convention: the p-quantile of N sorted values is
/// the element at index ceil(p*N) - 1.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "saea/algorithms.hpp"
#include "saea/fitness.hpp"
#include "saea/error.hpp"
#include "saea/harness/config.hpp"

namespace saea::harness {

/// Element at ceil(percent*N/100) - 1 of an ascending range; UsageError if
/// empty or percent is outside [0, 100].
template <class T>
T lower_quantile(std::span<const T> sorted, unsigned percent);

/// One run of an experiment.
struct RunRow {
  std::string algorithm;
  std::string function;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t trial = 0;
  RunRecord record;
};

struct SummaryRow {
  std::string algorithm;
  std::string function;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t trials = 0;
  std::size_t success_count = 0;
  std::uint64_t median = 0;
  std::uint64_t q1 = 0;
  std::uint64_t q3 = 0;
  std::uint64_t p95 = 0;
  double normalized_median = 0.0;
};

/// Runtime used for statistics: evaluations if successful, else the budget.
inline std::uint64_t censored_runtime(const RunRecord& r) noexcept {
  return r.success ? r.evaluations : r.budget;
}

/// Median divided by the runtime scale of the mode; ConfigError if the mode
/// does not fit the function.
double normalize(double median, FunctionKind function, double n, double k, Normalization mode);

/// Summary of runs sharing (algorithm, function, n, k); UsageError if empty.
SummaryRow summarize(std::span<const RunRow> rows, Normalization mode);

template <class T>
T lower_quantile(std::span<const T> sorted, unsigned percent) {
  if (sorted.empty()) throw UsageError("quantile of an empty sample");
  if (percent > 100) throw UsageError("percent must lie in [0, 100]");
  const std::size_t n = sorted.size();
  const std::size_t rank = (percent * n + 99) / 100;  // ceil(p*N)
  return sorted[rank == 0 ? 0 : rank - 1];
}

}  // namespace saea::harness
