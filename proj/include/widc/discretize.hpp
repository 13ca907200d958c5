#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace widc {

/// Supervised discretization by recursive entropy-minimizing binary cuts with
/// the minimum-description-length stopping rule. Cuts sit at midpoints between
/// adjacent distinct values; the accepted cut with the largest information
/// gain is applied first, up to max_thresholds cuts. Returns thresholds in
/// increasing order; a column with fewer than two distinct values gives none.
std::vector<double> discretize(std::span<const double> values, std::span<const std::size_t> labels,
                               std::size_t max_thresholds);

/// Class entropy in bits.
double label_entropy(std::span<const std::size_t> labels);

}  // namespace widc
