#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "widc/sample.hpp"

namespace widc {

struct Fold {
  std::vector<std::size_t> train;  // ascending
  std::vector<std::size_t> test;   // ascending
};

/// k stratified folds. Examples are grouped by their lowest class bit, shuffled
/// within the group, and dealt round-robin with one counter running across all
/// groups, so fold sizes and per-class counts differ by at most one.
/// Throws PreconditionError when k < 2 or k > |sample|.
std::vector<Fold> stratified_folds(const Sample& sample, std::size_t k, std::uint64_t seed);

}  // namespace widc
