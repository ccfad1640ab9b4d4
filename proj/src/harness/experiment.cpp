#include "saea/harness/experiment.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "saea/error.hpp"
#include "saea/fitness.hpp"
#include "saea/harness/expr.hpp"
#include "saea/rng.hpp"
#include "saea/theory.hpp"

namespace saea::harness {
namespace {

struct Job {
  std::size_t algo = 0;
  std::size_t k = 0;
  std::size_t trial = 0;
};

RunResult execute(const ResolvedAlgorithm& algo, FunctionKind function, std::size_t n,
                  std::size_t k, const RunOptions& opts) {
  // The instance (the hidden subset of OneMax_k) is tied to the run seed.
  Evaluator eval(make_instance(function, n, k, opts.seed));
  switch (algo.kind) {
    case AlgorithmKind::SelfAdaptive:
      return run_self_adaptive(eval, algo.sa, opts);
    case AlgorithmKind::OnePlusOne:
      return run_one_plus_one(eval, algo.rate, opts);
    case AlgorithmKind::OnePlusOneAlpha:
      return run_one_plus_one_alpha(eval, algo.alpha, opts);
    case AlgorithmKind::MuLambdaStatic:
      return run_mu_lambda_static(eval, algo.lambda, algo.mu, algo.rate, opts);
  }
  throw UsageError("unknown algorithm kind");
}

}  // namespace

std::uint64_t run_seed(std::uint64_t base_seed, std::string_view function,
                       std::string_view algorithm, std::size_t n, std::size_t k,
                       std::size_t trial) {
  std::uint64_t s = stream_seed(base_seed, token_hash(function));
  s = stream_seed(s, token_hash(algorithm));
  s = stream_seed(s, n);
  s = stream_seed(s, k);
  return stream_seed(s, trial);
}

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn) {
  if (workers == 0) workers = 1;
  if (workers == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> threads;
  const auto n_threads = std::min<std::size_t>(workers, count);
  threads.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

ExperimentResult run_experiment(const ExperimentConfig& config, unsigned workers) {
  validate(config);
  const auto ks = resolve_k(config);
  std::vector<std::vector<ResolvedAlgorithm>> resolved(config.algorithms.size());
  for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
    for (auto k : ks) resolved[a].push_back(resolve_algorithm(config.algorithms[a], config.n, k));
  }

  // Job order fixes the output order: algorithm (in token order), k, trial.
  std::vector<std::size_t> algo_order(config.algorithms.size());
  for (std::size_t a = 0; a < algo_order.size(); ++a) algo_order[a] = a;
  std::stable_sort(algo_order.begin(), algo_order.end(), [&](std::size_t x, std::size_t y) {
    return to_token(config.algorithms[x].kind) < to_token(config.algorithms[y].kind);
  });
  std::vector<std::size_t> k_order(ks.size());
  for (std::size_t i = 0; i < k_order.size(); ++i) k_order[i] = i;
  std::sort(k_order.begin(), k_order.end(), [&](std::size_t x, std::size_t y) { return ks[x] < ks[y]; });

  std::vector<Job> jobs;
  for (auto a : algo_order) {
    for (auto ki : k_order) {
      for (std::size_t t = 0; t < config.trials; ++t) jobs.push_back({a, ki, t});
    }
  }

  const std::string function(to_token(config.function));
  ExperimentResult result;
  result.runs.resize(jobs.size());
  parallel_for(jobs.size(), workers, [&](std::size_t i) {
    const Job& job = jobs[i];
    const auto& algo = resolved[job.algo][job.k];
    const std::string name(to_token(algo.kind));
    const std::size_t k = ks[job.k];
    RunOptions opts;
    opts.seed = run_seed(config.base_seed, function, name, config.n, k, job.trial);
    opts.budget = config.budget;
    RunRow row{name, function, config.n, k, job.trial, execute(algo, config.function, config.n, k, opts).record};
    result.runs[i] = std::move(row);
  });

  for (std::size_t begin = 0; begin < result.runs.size(); begin += config.trials) {
    const std::span<const RunRow> group(result.runs.data() + begin, config.trials);
    result.summaries.push_back(summarize(group, config.normalization));
  }
  return result;
}

std::optional<double> overlay_rate(const ExperimentConfig& config, const ResolvedAlgorithm& algo,
                                   std::size_t k, Fitness j) {
  const std::string& mode = config.overlay;
  if (mode == "none") return std::nullopt;
  const double n = static_cast<double>(config.n);
  const bool population =
      algo.kind == AlgorithmKind::SelfAdaptive || algo.kind == AlgorithmKind::MuLambdaStatic;
  if (mode == "auto" || mode == "error_threshold") {
    const bool lo_type = config.function == FunctionKind::LeadingOnesK ||
                         config.function == FunctionKind::SubStringK ||
                         config.function == FunctionKind::LeadingOnes;
    if (mode == "error_threshold" || lo_type) {
      if (!population) return std::nullopt;
      if (j < 1) return std::nullopt;
      return error_threshold(static_cast<std::size_t>(j), algo.reproductive_rate());
    }
    if (config.function == FunctionKind::JumpK) return static_cast<double>(k) / n;
    return 1.0 / n;
  }
  const Variables vars{{"n", n}, {"k", static_cast<double>(k)}, {"j", static_cast<double>(j)},
                       {"lambda", static_cast<double>(algo.lambda)},
                       {"mu", static_cast<double>(algo.mu)}};
  return evaluate_expression(mode, vars);
}

TraceResult run_trace_experiment(const ExperimentConfig& config, unsigned workers) {
  validate(config);
  if (config.algorithms.size() != 1) throw ConfigError("a trace experiment takes exactly one algorithm");
  const auto kind = config.algorithms.front().kind;
  if (kind != AlgorithmKind::SelfAdaptive && kind != AlgorithmKind::OnePlusOneAlpha) {
    throw ConfigError("tracing needs a self-adjusting algorithm, not " + std::string(to_token(kind)));
  }
  const auto ks = resolve_k(config);
  if (ks.size() != 1) throw ConfigError("a trace experiment takes exactly one k");
  const std::size_t k = ks.front();
  const auto algo = resolve_algorithm(config.algorithms.front(), config.n, k);
  if (config.overlay != "none" && config.overlay != "auto" && config.overlay != "error_threshold") {
    (void)overlay_rate(config, algo, k, 1);  // surface expression errors early
  }

  const std::string function(to_token(config.function));
  const std::string name(to_token(kind));
  std::vector<RunResult> results(config.trials);
  parallel_for(config.trials, workers, [&](std::size_t t) {
    RunOptions opts;
    opts.seed = run_seed(config.base_seed, function, name, config.n, k, t);
    opts.budget = config.budget;
    opts.trace = true;
    results[t] = execute(algo, config.function, config.n, k, opts);
  });

  TraceResult out;
  std::map<Fitness, std::vector<double>> pooled;
  for (std::size_t t = 0; t < results.size(); ++t) {
    out.runs.runs.push_back({name, function, config.n, k, t, results[t].record});
    for (const auto& rec : results[t].trace) {
      out.trace.push_back({t, rec});
      pooled[rec.best_fitness].push_back(rec.best_rate);
    }
  }
  out.runs.summaries.push_back(summarize(out.runs.runs, config.normalization));
  for (auto& [fitness, rates] : pooled) {
    std::sort(rates.begin(), rates.end());
    const std::span<const double> sorted(rates);
    out.summary.push_back({fitness, lower_quantile(sorted, 50), lower_quantile(sorted, 95),
                           overlay_rate(config, algo, k, fitness)});
  }
  return out;
}

}  // namespace saea::harness
