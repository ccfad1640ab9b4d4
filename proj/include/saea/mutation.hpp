#pragma once

/// @file mutation.hpp
/// @brief Standard bitwise mutation: every bit flips independently with
/// probability chi/n.
///
/// Two samplers with the same distribution are provided. The Bernoulli
/// sampler draws one uniform per bit. The binomial sampler draws the number
/// of flips first and then picks that many distinct positions (Floyd), so
/// its cost is proportional to the number of flips. mutate() dispatches on
/// the rate, and at rate exactly 1/2 XORs with random words.

#include <cstdint>
#include <random>
#include <string>

#include "saea/bitstring.hpp"
#include "saea/error.hpp"
#include "saea/rng.hpp"

namespace saea {

/// Rates above this use per-bit Bernoulli draws.
inline constexpr double kBinomialRateCutoff = 1.0 / 32.0;

namespace detail {

inline void check_chi(double chi, std::size_t n) {
  if (!(chi > 0.0) || chi > static_cast<double>(n) / 2.0) {
    throw ParameterError("mutation parameter chi=" + std::to_string(chi) +
                         " outside (0, n/2] for n=" + std::to_string(n));
  }
}

}  // namespace detail

template <UniformSource Rng>
BitString mutate_bernoulli(const BitString& x, double chi, Rng& rng) {
  detail::check_chi(chi, x.size());
  const double p = chi / static_cast<double>(x.size());
  BitString y = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (rng.uniform() < p) y.flip(i);
  }
  return y;
}

template <UniformSource Rng>
BitString mutate_binomial(const BitString& x, double chi, Rng& rng) {
  detail::check_chi(chi, x.size());
  const std::size_t n = x.size();
  const double p = chi / static_cast<double>(n);
  std::binomial_distribution<std::uint64_t> flips_dist(n, p);
  const std::uint64_t flips = flips_dist(rng);
  BitString y = x;
  // Floyd's sampling of `flips` distinct positions; a position is already
  // chosen iff y differs from x there.
  for (std::uint64_t j = n - flips; j < n; ++j) {
    const auto t = static_cast<std::size_t>(rng.below(j + 1));
    if (y.test(t) != x.test(t)) {
      y.flip(static_cast<std::size_t>(j));
    } else {
      y.flip(t);
    }
  }
  return y;
}

/// Returns a mutated copy of x; x is not modified. Requires 0 < chi <= n/2.
template <UniformSource Rng>
BitString mutate(const BitString& x, double chi, Rng& rng) {
  if (2.0 * chi == static_cast<double>(x.size())) {
    BitString y = x;
    y.flip_random(rng);
    return y;
  }
  if (chi / static_cast<double>(x.size()) > kBinomialRateCutoff) {
    return mutate_bernoulli(x, chi, rng);
  }
  return mutate_binomial(x, chi, rng);
}

}  // namespace saea
