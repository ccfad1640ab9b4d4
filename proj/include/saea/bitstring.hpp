#pragma once

/// @file bitstring.hpp
/// @brief Packed bitstrings and the (bitstring, mutation parameter) chromosome.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "saea/error.hpp"
#include "saea/rng.hpp"

namespace saea {

/// Fixed-length bitstring stored in 64-bit words, bit i in word i/64 at
/// position i%64. Unused bits of the last word are always zero.
class BitString {
 public:
  BitString() = default;

  /// All-zero string of length n; n must be at least 1.
  explicit BitString(std::size_t n) : size_(n), words_(word_count(n), 0) {
    if (n == 0) throw ParameterError("bitstring length must be at least 1");
  }

  /// Parses a string of '0'/'1' characters, first character is bit 0.
  static BitString from_string(std::string_view bits);

  /// Uniformly random string of length n.
  template <UniformSource Rng>
  static BitString random(std::size_t n, Rng& rng) {
    BitString x(n);
    for (auto& w : x.words_) w = rng();
    x.clear_padding();
    return x;
  }

  /// Flips each bit with probability 1/2, one generator word per 64 bits.
  template <class Rng>
  void flip_random(Rng& rng) {
    for (auto& w : words_) w ^= rng();
    clear_padding();
  }

  [[nodiscard]] std::size_t size() const noexcept { return size_; }

  [[nodiscard]] bool test(std::size_t i) const noexcept {
    return (words_[i >> 6] >> (i & 63)) & 1U;
  }
  [[nodiscard]] bool operator[](std::size_t i) const noexcept { return test(i); }

  void set(std::size_t i, bool value = true) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }

  void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  /// Number of one-bits.
  [[nodiscard]] std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  /// Length of the all-ones prefix.
  [[nodiscard]] std::size_t leading_ones() const noexcept {
    std::size_t total = 0;
    for (auto w : words_) {
      const auto run = static_cast<std::size_t>(std::countr_one(w));
      total += run;
      if (run < 64) break;
    }
    return total < size_ ? total : size_;
  }

  [[nodiscard]] std::span<const std::uint64_t> words() const noexcept { return words_; }

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  static constexpr std::size_t word_count(std::size_t n) noexcept { return (n + 63) / 64; }

  void clear_padding() noexcept {
    if (const std::size_t tail = size_ & 63; tail != 0) {
      words_.back() &= (std::uint64_t{1} << tail) - 1;
    }
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;

  friend std::size_t hamming(const BitString& x, const BitString& y);
};

/// Number of positions where x and y differ; UsageError on length mismatch.
std::size_t hamming(const BitString& x, const BitString& y);

/// A point of the extended search space: a bitstring with its mutation
/// parameter chi (expected number of flipped bits, rate chi/n).
struct Chromosome {
  BitString x;
  double chi = 1.0;

  [[nodiscard]] double rate() const noexcept { return chi / static_cast<double>(x.size()); }
};

}  // namespace saea
