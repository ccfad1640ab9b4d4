#include "saea/algorithms.hpp"

#include <string>

#include "saea/error.hpp"

namespace saea {
namespace {

void check_budget(std::uint64_t budget, std::size_t per_generation) {
  if (budget < per_generation) {
    throw ParameterError("budget " + std::to_string(budget) +
                         " is smaller than one generation (" + std::to_string(per_generation) +
                         " evaluations)");
  }
}

void check_rate(double rate) {
  if (!(rate > 0.0) || rate > 0.5) {
    throw ParameterError("mutation rate " + std::to_string(rate) + " outside (0, 1/2]");
  }
}

// Shared loop of the two population-based algorithms.
template <class Step>
RunResult run_population(Evaluator& eval, std::uint64_t start, Population pop, std::size_t lambda,
                         bool by_chi, const RunOptions& opts, Step&& step) {
  RunResult result;
  RunRecord& rec = result.record;
  rec.seed = opts.seed;
  rec.budget = opts.budget;
  const double n = static_cast<double>(eval.problem_size());
  for (std::uint64_t t = 0;; ++t) {
    if (by_chi) {
      rank(pop);
    } else {
      rank_by_fitness(pop);
    }
    rec.generations = t;
    rec.best_fitness = pop.front().fitness;
    rec.evaluations = eval.evaluations() - start;
    if (opts.trace) result.trace.push_back({t, pop.front().fitness, pop.front().c.chi / n});
    if (opts.observer) opts.observer(t, pop);
    if (eval.is_optimal(pop.front().fitness)) {
      rec.success = true;
      break;
    }
    if (rec.evaluations + lambda > opts.budget) break;
    pop = step(std::move(pop));
  }
  return result;
}

}  // namespace

std::string_view to_token(AlgorithmKind kind) noexcept {
  switch (kind) {
    case AlgorithmKind::SelfAdaptive: return "sa_mu_lambda";
    case AlgorithmKind::OnePlusOne: return "one_plus_one";
    case AlgorithmKind::OnePlusOneAlpha: return "one_plus_one_alpha";
    case AlgorithmKind::MuLambdaStatic: return "mu_lambda_static";
  }
  return "unknown";
}

AlgorithmKind parse_algorithm_kind(std::string_view token) {
  for (auto kind : {AlgorithmKind::SelfAdaptive, AlgorithmKind::OnePlusOne,
                    AlgorithmKind::OnePlusOneAlpha, AlgorithmKind::MuLambdaStatic}) {
    if (to_token(kind) == token) return kind;
  }
  throw ConfigError("unknown algorithm '" + std::string(token) + "'");
}

void SelfAdaptiveConfig::validate(std::size_t n) const {
  const double nn = static_cast<double>(n);
  if (mu < 1 || mu > lambda) throw ParameterError("need 1 <= mu <= lambda");
  if (!(A > 1.0)) throw ParameterError("need A > 1");
  if (!(b > 0.0 && b < 1.0)) throw ParameterError("need 0 < b < 1");
  if (!(p_inc > 0.0 && p_inc < 1.0)) throw ParameterError("need 0 < p_inc < 1");
  const double lo = chi_min(n);
  if (!(lo > 0.0 && lo < 1.0)) throw ParameterError("need 0 < epsilon*n < 1");
  if (!(chi_init >= 1.0 && chi_init <= nn / 2.0)) {
    throw ParameterError("need 1 <= chi_init <= n/2");
  }
}

void AlphaConfig::validate(std::size_t n) const {
  if (!(A > 1.0)) throw ParameterError("need A > 1");
  if (!(b > 0.0 && b < 1.0)) throw ParameterError("need 0 < b < 1");
  const double lo = chi_min(n);
  if (!(lo > 0.0 && lo <= static_cast<double>(n) / 2.0)) {
    throw ParameterError("need 0 < epsilon*n <= n/2");
  }
  if (!(chi_init >= lo && chi_init <= static_cast<double>(n) / 2.0)) {
    throw ParameterError("need epsilon*n <= chi_init <= n/2");
  }
}

RunResult run_self_adaptive(Evaluator& eval, const SelfAdaptiveConfig& cfg, const RunOptions& opts) {
  const std::size_t n = eval.problem_size();
  cfg.validate(n);
  check_budget(opts.budget, cfg.lambda);
  RngStream rng(opts.seed);
  const std::uint64_t start = eval.evaluations();
  Population pop;
  pop.reserve(cfg.lambda);
  for (std::size_t i = 0; i < cfg.lambda; ++i) {
    Individual ind{Chromosome{BitString::random(n, rng), cfg.chi_init}, 0};
    ind.fitness = eval(ind.c.x);
    pop.push_back(std::move(ind));
  }
  return run_population(eval, start, std::move(pop), cfg.lambda, true, opts, [&](Population p) {
    return step_self_adaptive(std::move(p), eval, cfg, rng);
  });
}

RunResult run_mu_lambda_static(Evaluator& eval, std::size_t lambda, std::size_t mu, double rate,
                               const RunOptions& opts) {
  check_rate(rate);
  if (mu < 1 || mu > lambda) throw ParameterError("need 1 <= mu <= lambda");
  check_budget(opts.budget, lambda);
  const std::size_t n = eval.problem_size();
  const double chi = rate * static_cast<double>(n);
  RngStream rng(opts.seed);
  const std::uint64_t start = eval.evaluations();
  Population pop;
  pop.reserve(lambda);
  for (std::size_t i = 0; i < lambda; ++i) {
    Individual ind{Chromosome{BitString::random(n, rng), chi}, 0};
    ind.fitness = eval(ind.c.x);
    pop.push_back(std::move(ind));
  }
  return run_population(eval, start, std::move(pop), lambda, false, opts, [&](Population p) {
    return step_mu_lambda_static(std::move(p), eval, mu, rng);
  });
}

namespace {

// Shared loop of the (1+1) variants; `update_chi(chi, improved)` returns the
// parameter for the next offspring.
template <class Update>
RunResult run_elitist(Evaluator& eval, double chi, const RunOptions& opts, Update&& update_chi) {
  check_budget(opts.budget, 1);
  const std::size_t n = eval.problem_size();
  const double nn = static_cast<double>(n);
  RngStream rng(opts.seed);
  RunResult result;
  RunRecord& rec = result.record;
  rec.seed = opts.seed;
  rec.budget = opts.budget;
  const std::uint64_t start = eval.evaluations();
  Individual parent{Chromosome{BitString::random(n, rng), chi}, 0};
  parent.fitness = eval(parent.c.x);
  for (std::uint64_t t = 0;; ++t) {
    rec.generations = t;
    rec.best_fitness = parent.fitness;
    rec.evaluations = eval.evaluations() - start;
    if (opts.trace) result.trace.push_back({t, parent.fitness, parent.c.chi / nn});
    if (opts.observer) opts.observer(t, std::span<const Individual>(&parent, 1));
    if (eval.is_optimal(parent.fitness)) {
      rec.success = true;
      break;
    }
    if (rec.evaluations + 1 > opts.budget) break;
    BitString y = mutate(parent.c.x, parent.c.chi, rng);
    const Fitness fy = eval(y);
    const double next_chi = update_chi(parent.c.chi, fy, parent.fitness);
    if (fy >= parent.fitness) {
      parent.c.x = std::move(y);
      parent.fitness = fy;
    }
    parent.c.chi = next_chi;
  }
  return result;
}

}  // namespace

RunResult run_one_plus_one(Evaluator& eval, double rate, const RunOptions& opts) {
  check_rate(rate);
  return run_elitist(eval, rate * static_cast<double>(eval.problem_size()), opts,
                     [](double chi, Fitness, Fitness) { return chi; });
}

RunResult run_one_plus_one_alpha(Evaluator& eval, const AlphaConfig& cfg, const RunOptions& opts) {
  const std::size_t n = eval.problem_size();
  cfg.validate(n);
  const double lo = cfg.chi_min(n);
  const bool strict = cfg.success == SuccessRule::Strict;
  return run_elitist(eval, cfg.chi_init, opts, [&](double chi, Fitness child, Fitness parent) {
    const bool success = strict ? child > parent : child >= parent;
    return success ? increase_chi(chi, n, cfg.A) : decrease_chi(chi, cfg.b, lo);
  });
}

std::string_view to_token(SuccessRule rule) noexcept {
  return rule == SuccessRule::Strict ? "strict" : "not_worse";
}

SuccessRule parse_success_rule(std::string_view token) {
  if (token == "not_worse") return SuccessRule::NotWorse;
  if (token == "strict") return SuccessRule::Strict;
  throw ConfigError("unknown success rule '" + std::string(token) + "'");
}

}  // namespace saea
