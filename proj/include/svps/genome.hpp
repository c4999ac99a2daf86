#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "svps/rng.hpp"

namespace svps {

/// Fixed-length bit string, packed into 64-bit words. Length is immutable
/// after construction; unused high bits of the top word are kept zero.
class Genome {
 public:
  explicit Genome(int length) : length_(check_length(length)), words_(word_count(length)) {}

  static Genome random(int length, RandomStream& rng) {
    Genome g(length);
    for (auto& w : g.words_) w = rng.next_u64();
    g.mask_top();
    return g;
  }

  static Genome from_string(std::string_view bits) {
    Genome g(static_cast<int>(bits.size()));
    for (int i = 0; i < g.length_; ++i) {
      char c = bits[static_cast<std::size_t>(i)];
      if (c == '1') {
        g.set(i, true);
      } else if (c != '0') {
        throw std::invalid_argument("genome string must contain only '0' and '1'");
      }
    }
    return g;
  }

  int length() const { return length_; }

  bool get(int i) const {
    return (words_[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1u;
  }

  void set(int i, bool value) {
    std::uint64_t bit = 1ull << (i & 63);
    auto& w = words_[static_cast<std::size_t>(i >> 6)];
    if (value)
      w |= bit;
    else
      w &= ~bit;
  }

  /// Number of one-bits over the whole genome.
  int unitation() const {
    int total = 0;
    for (std::uint64_t w : words_) total += std::popcount(w);
    return total;
  }

  std::span<const std::uint64_t> words() const { return words_; }

  std::string to_string() const {
    std::string s(static_cast<std::size_t>(length_), '0');
    for (int i = 0; i < length_; ++i)
      if (get(i)) s[static_cast<std::size_t>(i)] = '1';
    return s;
  }

  bool operator==(const Genome&) const = default;

  static int word_count(int length) { return (length + 63) / 64; }

 private:
  static int check_length(int length) {
    if (length < 1) throw std::invalid_argument("genome length must be positive");
    return length;
  }

  void mask_top() {
    int tail = length_ & 63;
    if (tail != 0) words_.back() &= (1ull << tail) - 1;
  }

  int length_;
  std::vector<std::uint64_t> words_;
};

/// Count of one-bits in a word span (whole-genome unitation on packed bits).
inline int unitation(std::span<const std::uint64_t> words) {
  int total = 0;
  for (std::uint64_t w : words) total += std::popcount(w);
  return total;
}

}  // namespace svps
