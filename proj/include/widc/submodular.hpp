#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "widc/votes.hpp"

namespace widc {

/// Subset of classes {0..c-1} as a bit mask; c <= 64.
using ClassSet = std::uint64_t;

inline ClassSet full_set(std::size_t c) { return c >= 64 ? ~ClassSet{0} : (ClassSet{1} << c) - 1; }

/// Ranking-loss set function over class subsets: A is the set of classes voted
/// +1, the others -1, and alpha scales the vote.
struct SetFunctionInstance {
  PairWeights pairs;
  double alpha = 1.0;
};

/// Pair mass split by how a pair (true j, non-class k) crosses A.
struct CrossingMass {
  double outward = 0.0;  // j in A, k not in A
  double inward = 0.0;   // j not in A, k in A
  double same = 0.0;     // both inside or both outside
};

CrossingMass crossing_mass(const PairWeights& pairs, ClassSet a);

/// f[A] = sum M[j][k] q_A(j,k), with q = e^-alpha on outward pairs, e^alpha on
/// inward pairs and 1 otherwise. This equals the ranking Z with alpha-scaled
/// votes v[j] = +1 for j in A, -1 otherwise.
double f_eval(const SetFunctionInstance& instance, ClassSet a);

/// f[A u B] + f[A n B] <= f[A] + f[B] + 1e-9.
bool check_submodular(const SetFunctionInstance& instance, ClassSet a, ClassSet b);

/// (2 - e^alpha - e^-alpha) times the pair mass running between A\B and B\A;
/// the value of f[A u B] + f[A n B] - f[A] - f[B] derived coefficient by
/// coefficient.
double submodular_gap(const SetFunctionInstance& instance, ClassSet a, ClassSet b);

/// Clamp applied to alpha when a crossing mass is zero.
inline constexpr double kAlphaWeightFloor = 1e-12;

/// alpha = ln(W+ / W-) / 2, with +-ln(1/1e-12) when one argument is zero and 0
/// when both are. Throws PreconditionError on a negative argument.
double alpha_opt(double w_plus, double w_minus);

/// Z at the optimal alpha: W0 + 2 sqrt(W+ W-). Symmetric under complement.
double z_symmetric(const PairWeights& pairs, ClassSet a);

struct SubsetOptimum {
  ClassSet set = 0;
  double value = 0.0;
};

/// Minimum of z_symmetric over proper nonempty subsets (c in [2, 16]). The
/// constant vectors (empty and full set) are excluded; their value is
/// pairs.total().
SubsetOptimum brute_force_min(const PairWeights& pairs);

/// Maximum of z_symmetric over all subsets, c <= 16.
SubsetOptimum brute_force_max(const PairWeights& pairs);

/// Queyranne's pendant-pair minimization of a set function over proper
/// nonempty subsets of {0..c-1}. Exact when f is symmetric and submodular.
/// Evaluations are memoized.
SubsetOptimum queyranne_min(std::size_t c, const std::function<double(ClassSet)>& f);

/// queyranne_min applied to z_symmetric.
SubsetOptimum queyranne_min(const PairWeights& pairs);

}  // namespace widc
