#include "saea/bitstring.hpp"

#include <bit>

namespace saea {

BitString BitString::from_string(std::string_view bits) {
  BitString x(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    switch (bits[i]) {
      case '0':
        break;
      case '1':
        x.set(i);
        break;
      default:
        throw ParameterError("bitstring literal may only contain '0' and '1'");
    }
  }
  return x;
}

std::string BitString::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (test(i)) s[i] = '1';
  }
  return s;
}

std::size_t hamming(const BitString& x, const BitString& y) {
  if (x.size_ != y.size_) {
    throw UsageError("hamming: length mismatch (" + std::to_string(x.size_) + " vs " +
                     std::to_string(y.size_) + ")");
  }
  std::size_t d = 0;
  for (std::size_t w = 0; w < x.words_.size(); ++w) {
    d += static_cast<std::size_t>(std::popcount(x.words_[w] ^ y.words_[w]));
  }
  return d;
}

}  // namespace saea
