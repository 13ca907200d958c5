#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "widc/committee.hpp"
#include "widc/sample.hpp"

namespace widc {

struct PruneStep {
  std::size_t rule_id = 0;  // index of the rule in the input committee
  double error = 0.0;       // committee error on the sample after the removal
  std::size_t rules = 0;
  std::size_t literals = 0;
};

using PruneTrace = std::vector<PruneStep>;

struct PessimisticResult {
  DecisionCommittee committee;
  PruneTrace trace;
  double initial_error = 0.0;
};

/// Removes, one at a time, the rule whose removal gives the lowest error on
/// sample (ties: most literals, then earliest rule), until no rule is left.
/// Returns the smallest committee of that sequence, starting committee
/// included, that attains the lowest error. Default vectors are recomputed for
/// every evaluated candidate and for the result.
PessimisticResult prune_pessimistic(const DecisionCommittee& dc, const Sample& sample, std::uint64_t tie_seed,
                                    bool parallel = true);

/// Largest total literal count of the rules other than excluded that a single
/// observation of sample satisfies together.
std::size_t set_bound(const DecisionCommittee& dc, std::size_t excluded, const Sample& sample);

/// sqrt(((set_value + 2) ln n + ln(1/delta)) / local_count). Throws
/// PreconditionError unless n >= 1, local_count >= 1 and 0 < delta < 1.
double penalty(std::size_t set_value, std::size_t n, double delta, std::size_t local_count);

struct PenaltyParams {
  double delta = 0.05;
  std::size_t resample_target = 5000;
  std::uint64_t seed = 0;
};

/// resample_target draws with replacement, uniform weights.
Sample resample(const Sample& sample, std::size_t target, std::uint64_t seed);

/// Single pass over rules by descending literal count, ties by rule order. A
/// rule is removed when its local error plus penalty is at least the local
/// error without it, or when no example satisfies it. The sample is first
/// resampled up to resample_target examples if it is smaller.
DecisionCommittee prune_optimistic(const DecisionCommittee& dc, const Sample& sample, const PenaltyParams& params,
                                   std::uint64_t tie_seed);

/// CSV: step,rule_id,error,r_DC,l_DC.
void write_prune_trace_csv(std::ostream& os, const PruneTrace& trace);

}  // namespace widc
