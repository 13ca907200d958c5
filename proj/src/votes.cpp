#include "widc/votes.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <numeric>

#include "widc/error.hpp"

namespace widc {

namespace {

// exp(-d / 2) for d = v[j] - v[k] in [-2, 2], indexed by d + 2.
const std::array<double, 5> kPairFactor = {std::exp(1.0), std::exp(0.5), 1.0, std::exp(-0.5), std::exp(-1.0)};

double pair_factor(int vj, int vk) { return kPairFactor[static_cast<std::size_t>(vj - vk + 2)]; }

std::vector<std::size_t> ascending_order(std::span<const double> weights) {
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return weights[a] < weights[b]; });
  return order;
}

// Scores every non-decreasing (-1.., 0.., +1..) vector laid out along order and
// returns the canonical form of the first minimizer.
template <typename Score>
VoteVector best_monotone(std::span<const std::size_t> order, Score&& score) {
  const std::size_t c = order.size();
  VoteVector v(c), best(c);
  double best_z = 0.0;
  bool first = true;
  for (std::size_t a = 0; a <= c; ++a) {
    for (std::size_t b = 0; a + b <= c; ++b) {
      for (std::size_t p = 0; p < c; ++p) v.set(order[p], p < a ? -1 : (p < a + b ? 0 : 1));
      const double z = score(v);
      if (first || z < best_z) {
        best_z = z;
        best = v;
        first = false;
      }
    }
  }
  return canonical_shift(best);
}

}  // namespace

double PairWeights::total() const noexcept { return std::accumulate(m_.begin(), m_.end(), 0.0); }

PairWeights PairWeights::transposed() const {
  PairWeights t(c_);
  for (std::size_t j = 0; j < c_; ++j)
    for (std::size_t k = 0; k < c_; ++k) t.at(k, j) = at(j, k);
  return t;
}

PairWeights PairWeights::scaled(double factor) const {
  PairWeights s = *this;
  for (auto& x : s.m_) x *= factor;
  return s;
}

PairWeights rankloss_pair_weights(std::span<const Example> examples, std::size_t c) {
  PairWeights pairs(c);
  for (const auto& e : examples) {
    if (e.classes.size() != c) throw DimensionError("class vector length differs from c");
    const std::size_t h = e.label_count();
    if (h == 0) throw PreconditionError("example has no class bit set");
    if (h == c) {
      ++pairs.skipped_all_class;
      continue;
    }
    const double share = e.weight / static_cast<double>(h * (c - h));
    for (std::size_t j = 0; j < c; ++j) {
      if (!e.classes.test(j)) continue;
      for (std::size_t k = 0; k < c; ++k)
        if (!e.classes.test(k)) pairs.at(j, k) += share;
    }
  }
  return pairs;
}

double z_ranking(const PairWeights& pairs, const VoteVector& v) {
  if (v.size() != pairs.c()) throw DimensionError("vote vector length differs from pair matrix");
  double z = 0.0;
  for (std::size_t j = 0; j < pairs.c(); ++j)
    for (std::size_t k = 0; k < pairs.c(); ++k)
      if (j != k) z += pairs.at(j, k) * pair_factor(v[j], v[k]);
  return z;
}

double z_single_label(std::span<const double> weights, const VoteVector& v) {
  const std::size_t c = weights.size();
  if (v.size() != c) throw DimensionError("vote vector length differs from class weights");
  if (c < 2) return 0.0;
  // Group classes by vote value: Z = sum_{a,b} Wsum[a] (count[b] - [a == b]) f(a, b) / (c - 1).
  std::array<double, 3> wsum{};
  std::array<double, 3> count{};
  for (std::size_t j = 0; j < c; ++j) {
    wsum[static_cast<std::size_t>(v[j] + 1)] += weights[j];
    count[static_cast<std::size_t>(v[j] + 1)] += 1.0;
  }
  double z = 0.0;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b) {
      const double partners = count[static_cast<std::size_t>(b + 1)] - (a == b ? 1.0 : 0.0);
      if (partners > 0.0) z += wsum[static_cast<std::size_t>(a + 1)] * partners * pair_factor(a, b);
    }
  return z / static_cast<double>(c - 1);
}

std::vector<double> class_weights(std::span<const Example> examples, std::size_t c) {
  std::vector<double> w(c, 0.0);
  for (const auto& e : examples) {
    const std::size_t h = e.label_count();
    if (h == 0) throw PreconditionError("example has no class bit set");
    const double share = e.weight / static_cast<double>(h);
    for (std::size_t j = 0; j < c; ++j)
      if (e.classes.test(j)) w[j] += share;
  }
  return w;
}

std::vector<Example> multilabel_split(const Example& example) {
  const std::size_t h = example.label_count();
  if (h == 0) throw PreconditionError("example has no class bit set");
  if (h == 1) return {example};
  std::vector<Example> out;
  out.reserve(h);
  const double share = example.weight / static_cast<double>(h);
  for (std::size_t j = 0; j < example.classes.size(); ++j)
    if (example.classes.test(j)) out.push_back(Example::single(example.observation, j, example.classes.size(), share));
  return out;
}

VoteVector canonical_shift(const VoteVector& v) {
  if (v.size() == 0) return v;
  int lo = 1, hi = -1, sum = 0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    lo = std::min(lo, v[j]);
    hi = std::max(hi, v[j]);
    sum += v[j];
  }
  // Shifts t keeping every component in {-1, 0, +1}: -1 - lo <= t <= 1 - hi.
  const int c = static_cast<int>(v.size());
  int best_t = -1 - lo;
  for (int t = -1 - lo + 1; t <= 1 - hi; ++t)
    if (std::abs(sum + t * c) < std::abs(sum + best_t * c)) best_t = t;
  VoteVector out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) out.set(j, v[j] + best_t);
  return out;
}

VoteVector assign_vector(std::span<const double> weights) {
  const std::size_t c = weights.size();
  for (double w : weights)
    if (w < 0.0) throw PreconditionError("class weights must be non-negative");
  if (c < 2 || std::all_of(weights.begin(), weights.end(), [](double w) { return w == 0.0; })) return VoteVector(c);
  const auto order = ascending_order(weights);
  return best_monotone(order, [&](const VoteVector& v) { return z_single_label(weights, v); });
}

VoteVector assign_vector_from_pairs(const PairWeights& pairs, std::span<const double> order_weights) {
  if (order_weights.size() != pairs.c()) throw DimensionError("order weights length differs from pair matrix");
  if (pairs.c() < 2 || pairs.total() == 0.0) return VoteVector(pairs.c());
  const auto order = ascending_order(order_weights);
  return best_monotone(order, [&](const VoteVector& v) { return z_ranking(pairs, v); });
}

int two_class_delta(double w_minus, double w_plus, const TwoClassThresholds& t) {
  if (w_minus < 0.0 || w_plus < 0.0) throw PreconditionError("class weights must be non-negative");
  if (w_minus == 0.0 && w_plus == 0.0) throw PreconditionError("two-class vote needs a positive weight");
  if (w_minus == 0.0) return 2;
  if (w_plus == 0.0) return -2;
  const double ratio = w_plus / w_minus;
  if (ratio >= t.strong) return 2;
  if (ratio >= t.weak) return 1;
  if (ratio >= t.neutral) return 0;
  if (ratio >= t.against) return -1;
  return -2;
}

VoteVector assign_vector_two_class(double w_minus, double w_plus, const TwoClassThresholds& t) {
  switch (two_class_delta(w_minus, w_plus, t)) {
    case 2: return {-1, 1};
    case 1: return {-1, 0};
    case 0: return {0, 0};
    case -1: return {0, -1};
    default: return {1, -1};
  }
}

VectorOptimum brute_force_vector(const PairWeights& pairs) {
  const std::size_t c = pairs.c();
  if (c > 12) throw PreconditionError("brute-force vote search is limited to c <= 12");
  std::vector<int> digits(c, -1);
  VoteVector v(c);
  for (std::size_t j = 0; j < c; ++j) v.set(j, -1);
  VectorOptimum best{v, z_ranking(pairs, v)};
  for (;;) {
    std::size_t p = c;
    while (p > 0 && digits[p - 1] == 1) {
      digits[p - 1] = -1;
      v.set(p - 1, -1);
      --p;
    }
    if (p == 0) break;
    ++digits[p - 1];
    v.set(p - 1, digits[p - 1]);
    const double z = z_ranking(pairs, v);
    if (z < best.z) best = {v, z};
  }
  best.vector = canonical_shift(best.vector);
  return best;
}

std::size_t max_label_count(std::span<const Example> examples) {
  std::size_t k = 0;
  for (const auto& e : examples) k = std::max(k, e.label_count());
  return k;
}

bool multilabel_bound_holds(const PairWeights& original, const VoteVector& v_approx, std::size_t c, std::size_t k) {
  if (k >= c) throw PreconditionError("label bound k must be smaller than c");
  if (original.c() != c || v_approx.size() != c) throw DimensionError("dimensions disagree with c");
  if (original.total() == 0.0) return true;
  const double z_star = brute_force_vector(original).z;
  const double factor = 1.0 + std::exp(1.0) / static_cast<double>(c - k);
  return z_ranking(original, v_approx) < z_star * factor;
}

std::vector<Rule> assign_votes(const Sample& sample, std::span<const Monomial> monomials, bool parallel) {
  std::vector<VoteVector> vectors(monomials.size());
  const auto count = static_cast<std::ptrdiff_t>(monomials.size());
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (std::ptrdiff_t r = 0; r < count; ++r) {
    const Monomial& m = monomials[static_cast<std::size_t>(r)];
    std::vector<double> w(sample.c(), 0.0);
    for (const auto& e : sample) {
      if (!m.satisfied_by_unchecked(e.observation)) continue;
      const double share = e.weight / static_cast<double>(e.label_count());
      for (std::size_t j = 0; j < sample.c(); ++j)
        if (e.classes.test(j)) w[j] += share;
    }
    vectors[static_cast<std::size_t>(r)] = assign_vector(w);
  }
  std::vector<Rule> rules;
  for (std::size_t r = 0; r < monomials.size(); ++r)
    if (!vectors[r].is_zero()) rules.push_back({monomials[r], vectors[r]});
  return rules;
}

}  // namespace widc
