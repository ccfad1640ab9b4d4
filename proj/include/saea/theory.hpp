#pragma once

/// @file theory.hpp
/// @brief Executable analysis of the self-adaptive EA on LeadingOnes_k.
///
/// TheoryParams bundles the algorithm constants (reproductive rate
/// alpha0 = lambda/mu, A, b, p_inc), the analysis constant delta, and the
/// derived constants r0, zeta and q. From these it evaluates the rate
/// thresholds theta1 < eta < theta2 per fitness level, the depth of each
/// level, and the partition of bitstring x rate space into sub-levels
/// (j, l) that the level-based runtime bound is applied to.
///
/// All thresholds are expressed as mutation rates chi/n.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "saea/bitstring.hpp"
#include "saea/fitness.hpp"

namespace saea {

/// Survival probability (1 - chi/n)^j: chance that bitwise mutation with
/// parameter chi keeps the first j bits.
double survival_prob(double j, double chi, double n);

/// Rate where the expected number of offspring of the top parent that keep
/// j leading ones equals one: 1 - alpha0^(-1/j). Returns 1 for j = 0.
double error_threshold(double j, double alpha0);

class TheoryParams {
 public:
  /// Derived constants without checking the runtime-theorem constraints.
  /// epsilon <= 0 selects 1/(2n); k = 0 selects k = n.
  static TheoryParams derive(std::size_t n, double alpha0, double A, double b, double p_inc,
                             double delta = 0.05, double epsilon = 0.0, std::size_t k = 0);

  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  [[nodiscard]] std::size_t k() const noexcept { return k_; }
  [[nodiscard]] double alpha0() const noexcept { return alpha0_; }
  [[nodiscard]] double A() const noexcept { return A_; }
  [[nodiscard]] double b() const noexcept { return b_; }
  [[nodiscard]] double p_inc() const noexcept { return p_inc_; }
  [[nodiscard]] double delta() const noexcept { return delta_; }
  [[nodiscard]] double epsilon() const noexcept { return epsilon_; }
  /// (1+delta) / (alpha0 (1-p_inc))
  [[nodiscard]] double r0() const noexcept { return r0_; }
  /// 1 - alpha0 r0^(1+sqrt(r0))
  [[nodiscard]] double zeta() const noexcept { return zeta_; }
  /// (1-zeta) / alpha0
  [[nodiscard]] double q() const noexcept { return q_; }

  /// Thresholds for j in [0..k]; ParameterError otherwise.
  [[nodiscard]] double eta(std::size_t j) const;
  [[nodiscard]] double theta1(std::size_t j) const;
  [[nodiscard]] double theta2(std::size_t j) const;

  /// min{l >= 1 : epsilon A^l >= theta1(j)} for j in [0..k-1].
  [[nodiscard]] std::size_t depth(std::size_t j) const;

  /// Index of the edge level of fitness j in the partition: one past the
  /// last low level. Equals depth(j) + 1 when epsilon < theta1(j), else 1.
  [[nodiscard]] std::size_t edge_sublevel(std::size_t j) const;

  /// Lower rate bound epsilon A^(l-1) of sub-level l.
  [[nodiscard]] double sublevel_floor(std::size_t l) const;

  /// Total number of levels m, including the optimum level.
  [[nodiscard]] std::size_t level_count() const;

 private:
  void check_level(std::size_t j) const;

  std::size_t n_ = 0;
  std::size_t k_ = 0;
  double alpha0_ = 0, A_ = 0, b_ = 0, p_inc_ = 0, delta_ = 0, epsilon_ = 0;
  double r0_ = 0, zeta_ = 0, q_ = 0;
  double eta1_base_ = 0;  // (1+delta)/(alpha0 p_inc)
};

/// Outcome of checking the runtime-theorem constraints.
struct ParamValidation {
  std::optional<TheoryParams> params;  ///< set iff violations is empty
  std::vector<std::string> violations;
  /// Open interval of delta values for which the remaining constraints hold;
  /// empty when delta_hi <= delta_lo.
  double delta_lo = 0.0;
  double delta_hi = 0.0;

  [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
};

/// Checks alpha0 = lambda/mu >= 4, A > 1, (1+delta)/alpha0 < p_inc < 2/5,
/// 0 < b < 1/(1+sqrt(r0)) and delta in (0, 1/10). Violations are reported,
/// not thrown.
ParamValidation validate_params(std::size_t n, std::size_t lambda, std::size_t mu, double A,
                                double b, double p_inc, double delta = 0.05, double epsilon = 0.0,
                                std::size_t k = 0);

/// Identifies sub-level A_(j, l).
struct LevelIndex {
  std::size_t j = 0;
  std::size_t ell = 1;

  friend bool operator==(const LevelIndex&, const LevelIndex&) = default;
  /// Lexicographic level order.
  friend auto operator<=>(const LevelIndex&, const LevelIndex&) = default;
};

/// Level containing (x, rate) where x has LeadingOnes_k value j.
/// DomainError if rate is outside [epsilon, 1/2].
LevelIndex classify_rate(double rate, std::size_t j, const TheoryParams& params);
LevelIndex classify(const Chromosome& c, Fitness j, const TheoryParams& params);

/// True iff the rate is too high to sustain fitness j: rate > theta2(j),
/// equivalently survival_prob(j, chi, n) < q.
bool in_bad_region_rate(double rate, std::size_t j, const TheoryParams& params);
bool in_bad_region(const Chromosome& c, Fitness j, const TheoryParams& params);

struct LevelBound {
  double expected_runtime = 0.0;  ///< upper bound on E[T]
  double min_lambda = 0.0;        ///< population size needed by condition (G3)
  double z_min = 0.0;
};

/// Level-based runtime bound for m levels with upgrade probabilities z
/// (one per non-final level, so z.size() == m-1), growth delta and
/// gamma0. ParameterError on empty or inconsistent input.
LevelBound level_based_bound(std::size_t m, std::span<const double> z, double delta, double gamma0,
                             double lambda);

/// 1 - c^(1/j) <= ln(1/c)/j, the direction that holds for every c, j > 0.
bool inv_bound_check(double c, double j);

}  // namespace saea
