#pragma once

// Data-parallel inner loops of training. Each kernel has a serial reference
// and an OpenMP version; both return bit-identical results because every
// output element is computed by the same sequence of operations and the
// selection among outputs happens afterwards, serially, in the caller.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "widc/committee.hpp"
#include "widc/partition.hpp"
#include "widc/sample.hpp"

namespace widc::kernels {

/// Scoring of candidate literals for the monomial being grown.
///
/// cell_of maps each example to its cell in the partition induced by the
/// already accepted monomials; cover lists the examples satisfying the partial
/// monomial. Adding a literal keeps the cover examples for which it holds, and
/// every cell splits into its part inside and outside the new cover.
struct LiteralScoring {
  const Sample* sample = nullptr;
  std::span<const std::uint32_t> cell_of;
  std::span<const GroupTally> cells;
  std::span<const std::size_t> cover;
  std::span<const Literal> candidates;
};

/// Z of the refined partition for every candidate, same order as candidates.
std::vector<double> score_literals_serial(const LiteralScoring& problem);
std::vector<double> score_literals_parallel(const LiteralScoring& problem);

/// Error of a committee after removing each candidate rule, with the default
/// vector recomputed on the reduced committee.
///
/// totals holds the current vote totals row-major (examples x c); coverage[r]
/// lists the examples satisfying rule r, ascending.
struct RemovalScoring {
  const Sample* sample = nullptr;
  std::span<const int> totals;
  std::span<const std::uint64_t> obs_hash;
  std::span<const std::vector<std::size_t>> coverage;
  std::span<const VoteVector> votes;
  std::span<const std::size_t> candidates;
  std::uint64_t tie_seed = 0;
};

std::vector<double> removal_errors_serial(const RemovalScoring& problem);
std::vector<double> removal_errors_parallel(const RemovalScoring& problem);

/// Weighted error of the committee with the given vote totals on sample.
double error_from_totals(const Sample& sample, std::span<const int> totals,
                         std::span<const std::uint64_t> obs_hash, std::uint64_t tie_seed);

}  // namespace widc::kernels
