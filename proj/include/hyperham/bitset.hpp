#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hyperham/types.hpp"

namespace hyperham {

inline std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

/// Dynamically sized bitset over vertex ids, sized once at construction.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t bits) : bits_(bits), words_(words_for(bits), 0) {}
  Bitset(std::size_t bits, std::span<const std::uint64_t> words)
      : bits_(bits), words_(words.begin(), words.end()) {}

  static Bitset full(std::size_t bits) {
    Bitset b(bits);
    for (std::size_t i = 0; i < bits; ++i) b.set(i);
    return b;
  }

  std::size_t size() const { return bits_; }
  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  void clear() { std::fill(words_.begin(), words_.end(), 0); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  Bitset& operator&=(std::span<const std::uint64_t> other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other[i];
    return *this;
  }
  Bitset& operator&=(const Bitset& other) { return *this &= other.words(); }
  Bitset& operator|=(std::span<const std::uint64_t> other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other[i];
    return *this;
  }
  Bitset& operator|=(const Bitset& other) { return *this |= other.words(); }
  Bitset& subtract(std::span<const std::uint64_t> other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other[i];
    return *this;
  }
  Bitset& subtract(const Bitset& other) { return subtract(other.words()); }

  bool operator==(const Bitset& other) const = default;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        const int b = std::countr_zero(w);
        f(static_cast<Vertex>(wi * 64 + static_cast<std::size_t>(b)));
        w &= w - 1;
      }
    }
  }

  std::vector<Vertex> to_vector() const {
    std::vector<Vertex> out;
    out.reserve(count());
    for_each([&](Vertex v) { out.push_back(v); });
    return out;
  }

  /// The k-th set bit in increasing order; k must be < count().
  Vertex nth(std::size_t k) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      const auto c = static_cast<std::size_t>(std::popcount(w));
      if (k < c) {
        for (; k > 0; --k) w &= w - 1;
        return static_cast<Vertex>(wi * 64 + static_cast<std::size_t>(std::countr_zero(w)));
      }
      k -= c;
    }
    return static_cast<Vertex>(bits_);
  }

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

inline std::size_t intersection_count(std::span<const std::uint64_t> a,
                                      std::span<const std::uint64_t> b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    c += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return c;
}

inline std::size_t intersection_count(std::span<const std::uint64_t> a,
                                      std::span<const std::uint64_t> b,
                                      std::span<const std::uint64_t> c) {
  std::size_t r = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    r += static_cast<std::size_t>(std::popcount(a[i] & b[i] & c[i]));
  return r;
}

inline Bitset to_bitset(std::size_t n, std::span<const Vertex> vs) {
  Bitset b(n);
  for (auto v : vs) b.set(v);
  return b;
}

}  // namespace hyperham
