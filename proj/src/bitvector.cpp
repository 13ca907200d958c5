#include "widc/bitvector.hpp"

#include <bit>

#include "widc/error.hpp"
#include "widc/random.hpp"

namespace widc {

BitVector BitVector::from_string(std::string_view bits) {
  BitVector b(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      b.set(i);
    else if (bits[i] != '0')
      throw PreconditionError("bit string may only contain '0' and '1'");
  }
  return b;
}

void BitVector::push_back(bool value) {
  if ((size_ & 63) == 0) words_.push_back(0);
  ++size_;
  set(size_ - 1, value);
}

std::size_t BitVector::count() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool BitVector::none() const noexcept {
  for (auto w : words_)
    if (w != 0) return false;
  return true;
}

std::vector<std::size_t> BitVector::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < words_.size(); ++k) {
    std::uint64_t w = words_[k];
    while (w != 0) {
      out.push_back(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

bool BitVector::is_subset_of(const BitVector& other) const noexcept {
  for (std::size_t k = 0; k < words_.size(); ++k)
    if (words_[k] & ~other.words_[k]) return false;
  return true;
}

bool BitVector::intersects(const BitVector& other) const noexcept {
  for (std::size_t k = 0; k < words_.size(); ++k)
    if (words_[k] & other.words_[k]) return true;
  return false;
}

std::uint64_t BitVector::hash() const noexcept {
  std::uint64_t h = splitmix64(size_);
  for (auto w : words_) h = splitmix64(h ^ w);
  return h;
}

std::string BitVector::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i)
    if (test(i)) s[i] = '1';
  return s;
}

}  // namespace widc
