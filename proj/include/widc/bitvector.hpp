#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace widc {

/// Fixed-length bit set stored in 64-bit words. Bits beyond size() are kept at
/// zero so that word-wise comparison and hashing are well defined.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  /// Parses a string of '0'/'1' characters, index 0 first.
  static BitVector from_string(std::string_view bits);

  std::size_t size() const noexcept { return size_; }
  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool value = true) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }
  void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  void push_back(bool value);

  std::size_t count() const noexcept;
  bool none() const noexcept;
  std::vector<std::size_t> indices() const;

  /// True iff every set bit of *this is set in other.
  bool is_subset_of(const BitVector& other) const noexcept;
  bool intersects(const BitVector& other) const noexcept;

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::uint64_t hash() const noexcept;
  std::string to_string() const;

  friend bool operator==(const BitVector&, const BitVector&) = default;
  friend auto operator<=>(const BitVector&, const BitVector&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitVectorHash {
  std::size_t operator()(const BitVector& b) const noexcept { return b.hash(); }
};

}  // namespace widc
