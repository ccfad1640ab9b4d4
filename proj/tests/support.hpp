#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

namespace saea::testing {

// Generator whose uniform() always returns the same value.
struct ConstantRng {
  using result_type = std::uint64_t;
  double value = 0.5;
  std::uint64_t word = 0;

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return word; }
  double uniform() { return value; }
  std::uint64_t below(std::uint64_t) { return 0; }
};

// Two-sample chi-square homogeneity test on equally sized histograms;
// bins with fewer than 10 combined counts are pooled into the next bin.
// Returns true when homogeneity is not rejected at level alpha.
inline bool same_distribution(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                              double alpha = 1e-3) {
  double stat = 0.0;
  int bins = 0;
  double pa = 0.0, pb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    pa += static_cast<double>(a[i]);
    pb += static_cast<double>(b[i]);
    if (pa + pb >= 10.0 || i + 1 == a.size()) {
      if (pa + pb > 0.0) {
        stat += (pa - pb) * (pa - pb) / (pa + pb);
        ++bins;
      }
      pa = pb = 0.0;
    }
  }
  if (bins < 2) return true;
  const boost::math::chi_squared dist(bins - 1);
  return stat <= boost::math::quantile(boost::math::complement(dist, alpha));
}

}  // namespace saea::testing
