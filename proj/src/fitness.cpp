#include "saea/fitness.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "saea/error.hpp"
#include "saea/rng.hpp"

namespace saea {
namespace {

void check_k(std::size_t k, std::size_t n, const char* what) {
  if (k < 1 || k > n) {
    throw ParameterError(std::string(what) + ": k=" + std::to_string(k) + " outside [1, " +
                         std::to_string(n) + "]");
  }
}

}  // namespace

std::string_view to_token(FunctionKind kind) noexcept {
  switch (kind) {
    case FunctionKind::LeadingOnesK: return "leadingones_k";
    case FunctionKind::OneMaxK: return "onemax_k";
    case FunctionKind::SubStringK: return "substring_k";
    case FunctionKind::JumpK: return "jump_k";
    case FunctionKind::LeadingOnes: return "leadingones";
    case FunctionKind::OneMax: return "onemax";
  }
  return "unknown";
}

FunctionKind parse_function_kind(std::string_view token) {
  for (auto kind : {FunctionKind::LeadingOnesK, FunctionKind::OneMaxK, FunctionKind::SubStringK,
                    FunctionKind::JumpK, FunctionKind::LeadingOnes, FunctionKind::OneMax}) {
    if (to_token(kind) == token) return kind;
  }
  throw ConfigError("unknown function '" + std::string(token) + "'");
}

Fitness eval_leading_ones_k(const BitString& x, std::size_t k) {
  check_k(k, x.size(), "leadingones_k");
  return static_cast<Fitness>(std::min(k, x.leading_ones()));
}

Fitness eval_onemax_k(const BitString& x, std::span<const std::size_t> subset) {
  Fitness f = 0;
  for (auto i : subset) {
    if (i >= x.size()) {
      throw ParameterError("onemax_k: index " + std::to_string(i) + " outside the bitstring");
    }
    f += x.test(i) ? 1 : 0;
  }
  return f;
}

Fitness eval_substring_k(const BitString& x, std::size_t k) {
  check_k(k, x.size(), "substring_k");
  // Windows shorter than k only occur at the start, where they are the
  // all-ones prefix. Afterwards, scan for the last run of ones of length >= k.
  Fitness best = static_cast<Fitness>(x.leading_ones());
  std::size_t run = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    run = x.test(i) ? run + 1 : 0;
    if (run >= k) best = std::max(best, static_cast<Fitness>(i + 1));
  }
  return best;
}

Fitness eval_jump_k(const BitString& x, std::size_t k) {
  const std::size_t n = x.size();
  if (k < 1 || k >= n) {
    throw ParameterError("jump_k: k=" + std::to_string(k) + " outside [1, n-1] for n=" +
                         std::to_string(n));
  }
  const auto om = static_cast<Fitness>(x.count());
  const auto nn = static_cast<Fitness>(n);
  const auto kk = static_cast<Fitness>(k);
  if (om == nn) return nn + 1;
  if (om < nn - kk) return om + kk;
  return om - kk;
}

Fitness FitnessFunction::operator()(const BitString& x) const {
  if (x.size() != n_) throw UsageError("bitstring length does not match the instance size");
  switch (kind_) {
    case FunctionKind::LeadingOnesK:
    case FunctionKind::LeadingOnes:
      return static_cast<Fitness>(std::min(k_, x.leading_ones()));
    case FunctionKind::OneMaxK: {
      std::size_t c = 0;
      const auto xs = x.words();
      const auto ms = mask_.words();
      for (std::size_t w = 0; w < xs.size(); ++w) {
        c += static_cast<std::size_t>(std::popcount(xs[w] & ms[w]));
      }
      return static_cast<Fitness>(c);
    }
    case FunctionKind::OneMax:
      return static_cast<Fitness>(x.count());
    case FunctionKind::SubStringK:
      return eval_substring_k(x, k_);
    case FunctionKind::JumpK:
      return eval_jump_k(x, k_);
  }
  return 0;
}

FitnessFunction make_instance(FunctionKind kind, std::size_t n, std::size_t k, std::uint64_t seed) {
  if (n < 1) throw ParameterError("problem size n must be at least 1");
  FitnessFunction f;
  f.kind_ = kind;
  f.n_ = n;
  switch (kind) {
    case FunctionKind::LeadingOnes:
    case FunctionKind::OneMax:
      f.k_ = n;
      f.optimum_ = static_cast<Fitness>(n);
      break;
    case FunctionKind::LeadingOnesK:
      check_k(k, n, "leadingones_k");
      f.k_ = k;
      f.optimum_ = static_cast<Fitness>(k);
      break;
    case FunctionKind::SubStringK:
      check_k(k, n, "substring_k");
      f.k_ = k;
      f.optimum_ = static_cast<Fitness>(n);
      break;
    case FunctionKind::JumpK:
      if (k < 1 || k >= n) {
        throw ParameterError("jump_k: k=" + std::to_string(k) + " outside [1, n-1]");
      }
      f.k_ = k;
      f.optimum_ = static_cast<Fitness>(n) + 1;
      break;
    case FunctionKind::OneMaxK: {
      check_k(k, n, "onemax_k");
      f.k_ = k;
      f.optimum_ = static_cast<Fitness>(k);
      // Partial Fisher-Yates shuffle: the first k entries are a uniform k-subset.
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      RngStream rng(stream_seed(seed, token_hash("onemax_k.subset")));
      for (std::size_t i = 0; i < k; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(perm[i], perm[j]);
      }
      perm.resize(k);
      std::sort(perm.begin(), perm.end());
      f.subset_ = std::move(perm);
      f.mask_ = BitString(n);
      for (auto i : f.subset_) f.mask_.set(i);
      break;
    }
  }
  return f;
}

Evaluator::Evaluator(FitnessFunction f)
    : n_(f.n()), optimum_(f.optimum_value()) {
  f_ = [f = std::move(f)](const BitString& x) { return f(x); };
}

Evaluator::Evaluator(std::size_t n, Callback f, std::optional<Fitness> optimum)
    : n_(n), f_(std::move(f)), optimum_(optimum) {}

}  // namespace saea
