#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "widc/committee.hpp"
#include "widc/sample.hpp"

namespace widc {

/// Aggregated ranking-pair weights: at(j, k) is the total weight of pairs
/// "true class j ranked above non-class k" over the examples of a rule.
class PairWeights {
 public:
  PairWeights() = default;
  explicit PairWeights(std::size_t c) : c_(c), m_(c * c, 0.0) {}

  std::size_t c() const noexcept { return c_; }
  double at(std::size_t j, std::size_t k) const { return m_[j * c_ + k]; }
  double& at(std::size_t j, std::size_t k) { return m_[j * c_ + k]; }
  double total() const noexcept;
  PairWeights transposed() const;
  PairWeights scaled(double factor) const;

  // Examples carrying every class bit add no pair; they are counted here.
  std::size_t skipped_all_class = 0;

 private:
  std::size_t c_ = 0;
  std::vector<double> m_;
};

/// Each example with h of c class bits set contributes w / (h (c - h)) to every
/// (set j, unset k) pair.
PairWeights rankloss_pair_weights(std::span<const Example> examples, std::size_t c);

/// sum_{j,k} M[j][k] exp(-(v[j] - v[k]) / 2).
double z_ranking(const PairWeights& pairs, const VoteVector& v);

/// Ranking-loss Z when every example has one class bit: with W_j the class
/// weights, M[j][k] = W_j / (c - 1) for all k != j.
double z_single_label(std::span<const double> weights, const VoteVector& v);

/// Per-class weight after splitting multilabel examples evenly over their bits.
std::vector<double> class_weights(std::span<const Example> examples, std::size_t c);

/// One single-label example per set class bit, each carrying w / h.
/// Throws PreconditionError on an example with no class bit.
std::vector<Example> multilabel_split(const Example& example);

/// Shifts v by a constant (keeping all differences) to the representative whose
/// component sum is closest to 0, ties to the lexicographically smallest.
VoteVector canonical_shift(const VoteVector& v);

/// Z-minimizing vote vector for single-label class weights. Classes are sorted
/// by ascending weight and only the (c+1)(c+2)/2 non-decreasing vectors
/// (-1 ... -1, 0 ... 0, +1 ... +1) in that order are scored. All-zero weights
/// give the zero vector.
VoteVector assign_vector(std::span<const double> weights);

/// Same monotone search, candidates ordered by order_weights but scored with
/// the full pair weights.
VoteVector assign_vector_from_pairs(const PairWeights& pairs, std::span<const double> order_weights);

/// Ratio cut points of the two-class table. Overridable so the verification
/// suite can check that it detects a corrupted table.
struct TwoClassThresholds {
  double strong = std::exp(1.5);   // Delta = +2 at or above
  double weak = std::exp(0.5);     // Delta = +1 at or above
  double neutral = std::exp(-0.5); // Delta = 0 at or above
  double against = std::exp(-1.5); // Delta = -1 at or above, else -2
};

/// Delta = v[1] - v[0] chosen from W+/W-. Throws PreconditionError when both
/// weights are zero or either is negative.
int two_class_delta(double w_minus, double w_plus, const TwoClassThresholds& t = {});

/// Canonical vector for two_class_delta: +2 (-1,+1), +1 (-1,0), 0 (0,0),
/// -1 (0,-1), -2 (+1,-1).
VoteVector assign_vector_two_class(double w_minus, double w_plus, const TwoClassThresholds& t = {});

struct VectorOptimum {
  VoteVector vector;
  double z = 0.0;
};

/// Exhaustive minimization of z_ranking over all 3^c vectors, c <= 12.
/// Returns the canonical form of the first minimizer in enumeration order.
VectorOptimum brute_force_vector(const PairWeights& pairs);

/// Largest label count over the examples.
std::size_t max_label_count(std::span<const Example> examples);

/// Checks Z(v_approx) < Z(v*) (1 + e / (c - k)) on the original pair weights,
/// with v* found by brute force. Throws PreconditionError when k >= c.
bool multilabel_bound_holds(const PairWeights& original, const VoteVector& v_approx, std::size_t c,
                            std::size_t k);

/// Vote vector of each monomial from the examples satisfying it. Rules whose
/// vector comes out all-zero are omitted. Result order follows monomials.
std::vector<Rule> assign_votes(const Sample& sample, std::span<const Monomial> monomials, bool parallel = true);

}  // namespace widc
