// Fixed-capacity bit vector used as a denotation key in the search engines.

#ifndef DCX_BITVEC_HPP
#define DCX_BITVEC_HPP

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace dcx {

class BitVec {
 public:
  static constexpr std::size_t kCapacity = 256;

  constexpr BitVec() = default;

  static BitVec first_n(std::size_t n) {
    BitVec b;
    for (std::size_t i = 0; i < n; ++i) b.set(i);
    return b;
  }

  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }

  bool none() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }
  bool any() const { return !none(); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  // True when every bit of this vector is also set in `other`.
  bool subset_of(const BitVec& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & ~other.words_[i]) != 0) return false;
    return true;
  }
  bool intersects(const BitVec& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & other.words_[i]) != 0) return true;
    return false;
  }

  BitVec& operator&=(const BitVec& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  BitVec& operator|=(const BitVec& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  // Set difference: bits of this vector not set in `o`.
  BitVec minus(const BitVec& o) const {
    BitVec r;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & ~o.words_[i];
    return r;
  }

  friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }
  friend BitVec operator|(BitVec a, const BitVec& b) { return a |= b; }
  friend bool operator==(const BitVec&, const BitVec&) = default;
  friend auto operator<=>(const BitVec& a, const BitVec& b) {
    for (std::size_t i = a.words_.size(); i-- > 0;)
      if (a.words_[i] != b.words_[i]) return a.words_[i] <=> b.words_[i];
    return std::strong_ordering::equal;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w != 0) {
        f(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::size_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

 private:
  std::array<std::uint64_t, kCapacity / 64> words_{};
};

struct BitVecHash {
  std::size_t operator()(const BitVec& b) const { return b.hash(); }
};

}  // namespace dcx

#endif  // DCX_BITVEC_HPP
