#include "saea/harness/stats.hpp"

#include <cmath>

#include "saea/error.hpp"

namespace saea::harness {

double normalize(double median, FunctionKind function, double n, double k, Normalization mode) {
  const double kd = k;
  switch (mode) {
    case Normalization::None:
      return median;
    case Normalization::NK:
      return median / (n * kd);
    case Normalization::KSquared:
      if (function != FunctionKind::LeadingOnesK && function != FunctionKind::SubStringK &&
          function != FunctionKind::LeadingOnes) {
        throw ConfigError("k_squared normalization needs a LeadingOnes-type function, not " +
                          std::string(to_token(function)));
      }
      return median / (kd * kd);
    case Normalization::KLogK:
      if (function != FunctionKind::OneMaxK && function != FunctionKind::OneMax) {
        throw ConfigError("k_log_k normalization needs a OneMax-type function, not " +
                          std::string(to_token(function)));
      }
      if (!(k > 1.0)) throw ConfigError("k_log_k normalization needs k > 1");
      return median / (kd * std::log(kd));
  }
  return median;
}

SummaryRow summarize(std::span<const RunRow> rows, Normalization mode) {
  if (rows.empty()) throw UsageError("cannot summarize zero runs");
  const RunRow& first = rows.front();
  SummaryRow s;
  s.algorithm = first.algorithm;
  s.function = first.function;
  s.n = first.n;
  s.k = first.k;
  s.trials = rows.size();
  std::vector<std::uint64_t> t;
  t.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.algorithm != s.algorithm || r.function != s.function || r.n != s.n || r.k != s.k) {
      throw UsageError("summarize needs rows of a single (algorithm, function, n, k)");
    }
    if (r.record.success) ++s.success_count;
    t.push_back(censored_runtime(r.record));
  }
  std::sort(t.begin(), t.end());
  const std::span<const std::uint64_t> sorted(t);
  s.median = lower_quantile(sorted, 50);
  s.q1 = lower_quantile(sorted, 25);
  s.q3 = lower_quantile(sorted, 75);
  s.p95 = lower_quantile(sorted, 95);
  s.normalized_median =
      normalize(static_cast<double>(s.median), parse_function_kind(s.function),
                static_cast<double>(s.n), static_cast<double>(s.k), mode);
  return s;
}

}  // namespace saea::harness
