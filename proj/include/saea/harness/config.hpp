#pragma once

/// @file config.hpp
/// @brief Experiment configuration files.
///
/// A config is a YAML mapping:
///
///     function: leadingones_k        # fitness token
///     n: 500
///     k: [50, 100, 250, 500]         # list, a scalar, or a grid mapping
///     trials: 30
///     budget: 1e9                    # expression, rounded
///     base_seed: 1
///     normalization: k_squared       # none | k_squared | n_k | k_log_k
///     trace: false
///     overlay: auto                  # auto | error_threshold | none | expression
///     algorithms:
///       sa_mu_lambda: {lambda: 16*ln(n), mu: lambda/8, A: 1.2, b: 0.7, p_inc: 0.25}
///       one_plus_one: {rate: 1/n}
///
/// A k grid is {from: 100, to: 2000, count: 6, spacing: geometric|linear}.
/// Parameter values are expressions in n, k and (for mu) lambda; lambda and
/// mu are rounded to the nearest integer. one_plus_one_alpha also takes
/// `success: not_worse | strict`.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "saea/algorithms.hpp"
#include "saea/fitness.hpp"

namespace saea::harness {

enum class Normalization { None, KSquared, NK, KLogK };

std::string_view to_token(Normalization mode) noexcept;
Normalization parse_normalization(std::string_view token);

enum class Spacing { Geometric, Linear };

struct KGrid {
  std::string from;
  std::string to;
  std::size_t count = 2;
  Spacing spacing = Spacing::Geometric;

  friend bool operator==(const KGrid&, const KGrid&) = default;
};

struct AlgorithmSpec {
  AlgorithmKind kind = AlgorithmKind::SelfAdaptive;
  /// Parameter expressions as written; defaults are applied on resolution.
  std::map<std::string, std::string> params;

  friend bool operator==(const AlgorithmSpec&, const AlgorithmSpec&) = default;
};

struct ExperimentConfig {
  FunctionKind function = FunctionKind::LeadingOnesK;
  std::size_t n = 100;
  std::vector<std::string> k;  ///< expressions; ignored when k_grid is set
  std::optional<KGrid> k_grid;
  std::size_t trials = 1;
  std::uint64_t budget = 1'000'000'000;
  std::uint64_t base_seed = 0;
  Normalization normalization = Normalization::None;
  bool trace = false;
  std::string overlay = "auto";
  std::vector<AlgorithmSpec> algorithms;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// ConfigError on malformed input or unknown keys/tokens.
ExperimentConfig parse_config(std::string_view yaml_text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string to_yaml(const ExperimentConfig& config);

/// Numeric parameters of one algorithm for a given (n, k).
struct ResolvedAlgorithm {
  AlgorithmKind kind = AlgorithmKind::SelfAdaptive;
  SelfAdaptiveConfig sa;     ///< sa_mu_lambda
  AlphaConfig alpha;         ///< one_plus_one_alpha
  std::size_t lambda = 1;    ///< population algorithms
  std::size_t mu = 1;
  double rate = 0.0;         ///< one_plus_one and mu_lambda_static

  /// lambda/mu for population algorithms, 1 otherwise.
  [[nodiscard]] double reproductive_rate() const noexcept {
    return static_cast<double>(lambda) / static_cast<double>(mu);
  }
};

/// Concrete k values, rounded to integers. LeadingOnes and OneMax use k = n.
std::vector<std::size_t> resolve_k(const ExperimentConfig& config);

ResolvedAlgorithm resolve_algorithm(const AlgorithmSpec& spec, std::size_t n, std::size_t k);

/// Resolves everything a run needs; ConfigError on the first problem.
void validate(const ExperimentConfig& config);

}  // namespace saea::harness
