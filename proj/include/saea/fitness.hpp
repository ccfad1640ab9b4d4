#pragma once

/// @file fitness.hpp
/// @brief Benchmark functions with a hidden structure parameter k.
///
/// Algorithms never see a FitnessFunction directly. They receive an
/// Evaluator, which reports fitness values and whether a value is optimal,
/// and counts every call.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "saea/bitstring.hpp"

namespace saea {

using Fitness = std::int64_t;

enum class FunctionKind { LeadingOnesK, OneMaxK, SubStringK, JumpK, LeadingOnes, OneMax };

/// Lowercase config/CLI token, e.g. "leadingones_k".
std::string_view to_token(FunctionKind kind) noexcept;

/// Inverse of to_token; ConfigError for unknown tokens.
FunctionKind parse_function_kind(std::string_view token);

/// Leading-ones count capped at k. Requires 1 <= k <= n.
Fitness eval_leading_ones_k(const BitString& x, std::size_t k);

/// Number of one-bits among the (0-based) positions in `subset`.
Fitness eval_onemax_k(const BitString& x, std::span<const std::size_t> subset);

/// Largest (1-based) position i such that the min(i, k) bits ending at i are
/// all ones, or 0 if there is none. Requires 1 <= k <= n.
Fitness eval_substring_k(const BitString& x, std::size_t k);

/// OneMax with a fitness valley of width k below the all-ones string.
/// Requires 1 <= k < n.
Fitness eval_jump_k(const BitString& x, std::size_t k);

/// An immutable benchmark instance.
class FitnessFunction {
 public:
  [[nodiscard]] Fitness operator()(const BitString& x) const;

  [[nodiscard]] FunctionKind kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  [[nodiscard]] std::size_t k() const noexcept { return k_; }
  /// Sorted 0-based hidden subset; empty unless kind is OneMaxK.
  [[nodiscard]] std::span<const std::size_t> hidden_subset() const noexcept { return subset_; }
  [[nodiscard]] Fitness optimum_value() const noexcept { return optimum_; }

 private:
  friend FitnessFunction make_instance(FunctionKind, std::size_t, std::size_t, std::uint64_t);

  FunctionKind kind_ = FunctionKind::OneMax;
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<std::size_t> subset_;
  BitString mask_;
  Fitness optimum_ = 0;
};

/// Builds an instance. For OneMaxK the hidden subset is a uniform k-subset
/// drawn from `seed`; other kinds ignore the seed. LeadingOnes and OneMax
/// ignore k (it is set to n). ParameterError on invalid (kind, n, k).
FitnessFunction make_instance(FunctionKind kind, std::size_t n, std::size_t k, std::uint64_t seed);

/// Counting view of a fitness function handed to algorithms.
class Evaluator {
 public:
  using Callback = std::function<Fitness(const BitString&)>;

  explicit Evaluator(FitnessFunction f);

  /// Arbitrary fitness on length-n strings; without an optimum the run only
  /// stops at its budget.
  Evaluator(std::size_t n, Callback f, std::optional<Fitness> optimum = std::nullopt);

  Fitness operator()(const BitString& x) {
    ++evaluations_;
    return f_(x);
  }

  [[nodiscard]] bool is_optimal(Fitness value) const noexcept {
    return optimum_.has_value() && value >= *optimum_;
  }
  [[nodiscard]] std::size_t problem_size() const noexcept { return n_; }
  [[nodiscard]] std::uint64_t evaluations() const noexcept { return evaluations_; }

 private:
  std::size_t n_;
  Callback f_;
  std::optional<Fitness> optimum_;
  std::uint64_t evaluations_ = 0;
};

}  // namespace saea
