#pragma once

/// @file rng.hpp
/// @brief Seeded, splittable random streams.
///
/// Every run owns one RngStream. Streams for independent tasks are derived
/// with substream() or stream_seed() from a base seed and an integer key, so
/// results never depend on the order in which tasks are scheduled.

#include <concepts>
#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

namespace saea {

/// One round of the splitmix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Combines a base seed with a stream key.
constexpr std::uint64_t stream_seed(std::uint64_t base, std::uint64_t key) noexcept {
  return splitmix64(splitmix64(base) ^ (key * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL));
}

/// Stable (platform independent) hash of a token, for seed derivation.
constexpr std::uint64_t token_hash(std::string_view token) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : token) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return splitmix64(h);
}

/// xoshiro256** generator seeded through splitmix64.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed) noexcept : seed_(seed) {
    std::uint64_t s = seed;
    for (auto& word : state_) {
      s += 0x9e3779b97f4a7c15ULL;
      word = splitmix64(s);
    }
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept {
    // Lemire's multiply-shift with rejection.
    std::uint64_t x = (*this)();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = (*this)();
        m = static_cast<__uint128_t>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Independent stream keyed by `key`; does not depend on this stream's state.
  [[nodiscard]] RngStream substream(std::uint64_t key) const noexcept {
    return RngStream(stream_seed(seed_, key));
  }

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t seed_;
  std::uint64_t state_[4]{};
};

/// Source of randomness accepted by the variation operators. RngStream models
/// it; tests substitute deterministic stubs.
template <class G>
concept UniformSource = std::uniform_random_bit_generator<G> && requires(G g, std::uint64_t b) {
  { g.uniform() } -> std::convertible_to<double>;
  { g.below(b) } -> std::convertible_to<std::uint64_t>;
};

static_assert(UniformSource<RngStream>);

}  // namespace saea
