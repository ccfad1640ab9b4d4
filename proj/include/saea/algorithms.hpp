#pragma once

/// @file algorithms.hpp
/// @brief The self-adaptive (mu,lambda) EA and the comparison algorithms.
///
/// All algorithms count fitness evaluations through the Evaluator and stop
/// when an optimal value is seen or when the next generation would exceed
/// the evaluation budget. Evaluations of the initial population count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "saea/bitstring.hpp"
#include "saea/fitness.hpp"
#include "saea/mutation.hpp"
#include "saea/rng.hpp"

namespace saea {

enum class AlgorithmKind { SelfAdaptive, OnePlusOne, OnePlusOneAlpha, MuLambdaStatic };

std::string_view to_token(AlgorithmKind kind) noexcept;
AlgorithmKind parse_algorithm_kind(std::string_view token);

/// Parameters of the self-adaptive (mu,lambda) EA.
struct SelfAdaptiveConfig {
  std::size_t lambda = 1;
  std::size_t mu = 1;
  double A = 1.5;        ///< rate increase factor, > 1
  double b = 0.7;        ///< rate decrease factor, in (0,1)
  double p_inc = 0.25;   ///< probability of increasing chi
  double epsilon = 0.0;  ///< lower bound on the rate; 0 means 1/(2n)
  double chi_init = 1.0;

  /// Lower clamp on chi for problem size n.
  [[nodiscard]] double chi_min(std::size_t n) const noexcept {
    const double eps = epsilon > 0.0 ? epsilon : 0.5 / static_cast<double>(n);
    return eps * static_cast<double>(n);
  }

  /// ParameterError naming the first violated invariant.
  void validate(std::size_t n) const;
};

/// Parameters of the (1+1) EA_alpha.
/// What counts as a success for the (1+1)_alpha rate update.
enum class SuccessRule {
  NotWorse,  ///< offspring fitness >= parent fitness
  Strict,    ///< offspring fitness > parent fitness
};

std::string_view to_token(SuccessRule rule) noexcept;
SuccessRule parse_success_rule(std::string_view token);

struct AlphaConfig {
  double A = 1.2;
  double b = 0.85;
  double epsilon = 0.0;  ///< 0 means 1/(2n)
  double chi_init = 1.0;
  SuccessRule success = SuccessRule::NotWorse;

  [[nodiscard]] double chi_min(std::size_t n) const noexcept {
    const double eps = epsilon > 0.0 ? epsilon : 0.5 / static_cast<double>(n);
    return eps * static_cast<double>(n);
  }
  void validate(std::size_t n) const;
};

struct Individual {
  Chromosome c;
  Fitness fitness = 0;
};

using Population = std::vector<Individual>;

/// Sorts best first: higher fitness, then higher chi; full ties keep their
/// original order.
inline void rank(Population& pop) {
  std::stable_sort(pop.begin(), pop.end(), [](const Individual& a, const Individual& b) {
    if (a.fitness != b.fitness) return a.fitness > b.fitness;
    return a.c.chi > b.c.chi;
  });
}

/// Sorts by fitness only; ties keep their original order.
inline void rank_by_fitness(Population& pop) {
  std::stable_sort(pop.begin(), pop.end(), [](const Individual& a, const Individual& b) {
    return a.fitness > b.fitness;
  });
}

inline double increase_chi(double chi, std::size_t n, double A) noexcept {
  return std::min(A * chi, static_cast<double>(n) / 2.0);
}

inline double decrease_chi(double chi, double b, double chi_min) noexcept {
  return std::max(b * chi, chi_min);
}

/// One adaptation step: min(A chi, n/2) with probability p_inc, else
/// max(b chi, eps n).
template <UniformSource Rng>
double adapt_chi(double chi, std::size_t n, const SelfAdaptiveConfig& cfg, Rng& rng) {
  if (rng.uniform() < cfg.p_inc) return increase_chi(chi, n, cfg.A);
  return decrease_chi(chi, cfg.b, cfg.chi_min(n));
}

/// One generation of the self-adaptive EA. Ranks `pop`, then creates
/// lambda offspring, each from a parent drawn uniformly among the top mu,
/// with an adapted chi and bitwise mutation at the new chi. Exactly
/// pop.size() evaluations. If `parent_ranks` is given it receives the rank
/// of each offspring's parent.
template <UniformSource Rng>
Population step_self_adaptive(Population pop, Evaluator& eval, const SelfAdaptiveConfig& cfg,
                              Rng& rng, std::vector<std::size_t>* parent_ranks = nullptr) {
  rank(pop);
  const std::size_t n = eval.problem_size();
  const std::size_t lambda = pop.size();
  const std::size_t mu = std::min(cfg.mu, lambda);
  if (parent_ranks != nullptr) parent_ranks->assign(lambda, 0);
  Population next;
  next.reserve(lambda);
  for (std::size_t i = 0; i < lambda; ++i) {
    const auto r = static_cast<std::size_t>(rng.below(mu));
    if (parent_ranks != nullptr) (*parent_ranks)[i] = r;
    const Chromosome& parent = pop[r].c;
    const double chi = adapt_chi(parent.chi, n, cfg, rng);
    Individual child{Chromosome{mutate(parent.x, chi, rng), chi}, 0};
    child.fitness = eval(child.c.x);
    next.push_back(std::move(child));
  }
  return next;
}

/// One generation of the (mu,lambda) EA with a fixed chi carried by every
/// individual; ranking by fitness only.
template <UniformSource Rng>
Population step_mu_lambda_static(Population pop, Evaluator& eval, std::size_t mu, Rng& rng) {
  rank_by_fitness(pop);
  const std::size_t lambda = pop.size();
  mu = std::min(mu, lambda);
  Population next;
  next.reserve(lambda);
  for (std::size_t i = 0; i < lambda; ++i) {
    const Chromosome& parent = pop[rng.below(mu)].c;
    Individual child{Chromosome{mutate(parent.x, parent.chi, rng), parent.chi}, 0};
    child.fitness = eval(child.c.x);
    next.push_back(std::move(child));
  }
  return next;
}

/// Per-run outcome. evaluations is the runtime T when success is true.
struct RunRecord {
  std::uint64_t evaluations = 0;
  bool success = false;
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  std::uint64_t generations = 0;  ///< generations after the initial one
  Fitness best_fitness = 0;
};

/// Telemetry of the top-ranked individual (or the current parent).
struct TraceRecord {
  std::uint64_t generation = 0;
  Fitness best_fitness = 0;
  double best_rate = 0.0;
};

/// Called once per generation with the ranked population.
using GenerationObserver = std::function<void(std::uint64_t generation, std::span<const Individual>)>;

struct RunOptions {
  std::uint64_t seed = 0;
  std::uint64_t budget = 1'000'000'000;
  bool trace = false;
  GenerationObserver observer;
};

struct RunResult {
  RunRecord record;
  std::vector<TraceRecord> trace;
};

/// The self-adaptive (mu,lambda) EA from uniformly random initial strings,
/// all with chi = chi_init.
RunResult run_self_adaptive(Evaluator& eval, const SelfAdaptiveConfig& cfg, const RunOptions& opts);

/// Elitist (1+1) EA with a fixed rate; offspring replaces the parent when
/// its fitness is at least the parent's.
RunResult run_one_plus_one(Evaluator& eval, double rate, const RunOptions& opts);

/// (1+1) EA_alpha: elitist acceptance, chi <- min(A chi, n/2) after a
/// success (see SuccessRule), otherwise chi <- max(b chi, eps n).
RunResult run_one_plus_one_alpha(Evaluator& eval, const AlphaConfig& cfg, const RunOptions& opts);

/// Non-elitist (mu,lambda) EA with a fixed rate.
RunResult run_mu_lambda_static(Evaluator& eval, std::size_t lambda, std::size_t mu, double rate,
                               const RunOptions& opts);

}  // namespace saea
