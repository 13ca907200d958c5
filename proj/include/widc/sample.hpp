#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "widc/bitvector.hpp"

namespace widc {

using Observation = BitVector;

/// One weighted example: an n-bit observation and a c-bit class membership
/// vector. Single-label examples have exactly one class bit set.
struct Example {
  Observation observation;
  BitVector classes;
  double weight = 1.0;

  static Example single(Observation observation, std::size_t cls, std::size_t c,
                        double weight = 1.0);

  std::size_t label_count() const noexcept { return classes.count(); }
  /// Lowest set class bit.
  std::size_t first_class() const;
};

/// Learning sample. All examples share n and c; weights are positive.
class Sample {
 public:
  Sample() = default;
  Sample(std::size_t n, std::size_t c);

  /// Throws DimensionError on n/c mismatch, PreconditionError on an example with
  /// no class bit or a non-positive weight.
  void add(Example example);
  /// Rescales weights to sum to 1.
  void normalize();

  std::size_t n() const noexcept { return n_; }
  std::size_t c() const noexcept { return c_; }
  std::size_t size() const noexcept { return examples_.size(); }
  bool empty() const noexcept { return examples_.empty(); }
  const Example& operator[](std::size_t i) const { return examples_[i]; }
  std::span<const Example> examples() const noexcept { return examples_; }
  auto begin() const noexcept { return examples_.begin(); }
  auto end() const noexcept { return examples_.end(); }

  double total_weight() const noexcept;
  bool single_label() const noexcept;
  /// Weight-normalized class distribution; a multilabel example spreads its
  /// weight evenly over its class bits.
  std::vector<double> class_distribution() const;
  /// Examples at the given indices, weights renormalized.
  Sample subset(std::span<const std::size_t> indices) const;

 private:
  std::size_t n_ = 0;
  std::size_t c_ = 0;
  std::vector<Example> examples_;
};

}  // namespace widc
