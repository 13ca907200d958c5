#include "widc/submodular.hpp"

#include <cmath>
#include <limits>
#include <unordered_map>
#include <vector>

#include "widc/error.hpp"

namespace widc {

namespace {

bool in(ClassSet s, std::size_t j) { return (s >> j) & 1u; }

void require_small(std::size_t c, std::size_t limit) {
  if (c > limit) throw PreconditionError("subset enumeration is limited to c <= " + std::to_string(limit));
}

}  // namespace

CrossingMass crossing_mass(const PairWeights& pairs, ClassSet a) {
  CrossingMass m;
  for (std::size_t j = 0; j < pairs.c(); ++j)
    for (std::size_t k = 0; k < pairs.c(); ++k) {
      if (j == k) continue;
      const double w = pairs.at(j, k);
      if (in(a, j) && !in(a, k))
        m.outward += w;
      else if (!in(a, j) && in(a, k))
        m.inward += w;
      else
        m.same += w;
    }
  return m;
}

double f_eval(const SetFunctionInstance& instance, ClassSet a) {
  const auto m = crossing_mass(instance.pairs, a);
  return m.same + m.outward * std::exp(-instance.alpha) + m.inward * std::exp(instance.alpha);
}

bool check_submodular(const SetFunctionInstance& instance, ClassSet a, ClassSet b) {
  return f_eval(instance, a | b) + f_eval(instance, a & b) <= f_eval(instance, a) + f_eval(instance, b) + 1e-9;
}

double submodular_gap(const SetFunctionInstance& instance, ClassSet a, ClassSet b) {
  const ClassSet only_a = a & ~b;
  const ClassSet only_b = b & ~a;
  double crossing = 0.0;
  for (std::size_t j = 0; j < instance.pairs.c(); ++j)
    for (std::size_t k = 0; k < instance.pairs.c(); ++k)
      if ((in(only_a, j) && in(only_b, k)) || (in(only_b, j) && in(only_a, k))) crossing += instance.pairs.at(j, k);
  return (2.0 - std::exp(instance.alpha) - std::exp(-instance.alpha)) * crossing;
}

double alpha_opt(double w_plus, double w_minus) {
  if (w_plus < 0.0 || w_minus < 0.0) throw PreconditionError("crossing masses must be non-negative");
  const double bound = std::log(1.0 / kAlphaWeightFloor);
  if (w_plus == 0.0 && w_minus == 0.0) return 0.0;
  if (w_minus == 0.0) return bound;
  if (w_plus == 0.0) return -bound;
  return 0.5 * std::log(w_plus / w_minus);
}

double z_symmetric(const PairWeights& pairs, ClassSet a) {
  const auto m = crossing_mass(pairs, a);
  return m.same + 2.0 * std::sqrt(m.outward * m.inward);
}

SubsetOptimum brute_force_min(const PairWeights& pairs) {
  const std::size_t c = pairs.c();
  require_small(c, 16);
  if (c < 2) throw PreconditionError("a proper nonempty subset needs c >= 2");
  SubsetOptimum best{0, std::numeric_limits<double>::infinity()};
  for (ClassSet a = 1; a < full_set(c); ++a) {
    const double v = z_symmetric(pairs, a);
    if (v < best.value) best = {a, v};
  }
  return best;
}

SubsetOptimum brute_force_max(const PairWeights& pairs) {
  const std::size_t c = pairs.c();
  require_small(c, 16);
  SubsetOptimum best{0, -std::numeric_limits<double>::infinity()};
  for (ClassSet a = 0; a <= full_set(c); ++a) {
    const double v = z_symmetric(pairs, a);
    if (v > best.value) best = {a, v};
  }
  return best;
}

SubsetOptimum queyranne_min(std::size_t c, const std::function<double(ClassSet)>& f) {
  if (c < 2) throw PreconditionError("a proper nonempty subset needs c >= 2");
  require_small(c, 64);
  std::unordered_map<ClassSet, double> memo;
  auto eval = [&](ClassSet s) {
    auto it = memo.find(s);
    if (it != memo.end()) return it->second;
    const double v = f(s);
    memo.emplace(s, v);
    return v;
  };

  // Each super-element is the set of original classes merged into it.
  std::vector<ClassSet> elements;
  for (std::size_t j = 0; j < c; ++j) elements.push_back(ClassSet{1} << j);

  SubsetOptimum best{0, std::numeric_limits<double>::infinity()};
  while (elements.size() > 1) {
    // Maximum-adjacency style ordering: grow W by the element u minimizing
    // f(W + u) - f(u); the last two elements form a pendant pair.
    std::vector<bool> used(elements.size(), false);
    std::vector<std::size_t> order{0};
    used[0] = true;
    ClassSet w = elements[0];
    while (order.size() < elements.size()) {
      std::size_t pick = 0;
      double pick_key = std::numeric_limits<double>::infinity();
      for (std::size_t u = 0; u < elements.size(); ++u) {
        if (used[u]) continue;
        const double key = eval(w | elements[u]) - eval(elements[u]);
        if (key < pick_key) {
          pick_key = key;
          pick = u;
        }
      }
      used[pick] = true;
      order.push_back(pick);
      w |= elements[pick];
    }
    const std::size_t t = order[order.size() - 2];
    const std::size_t u = order.back();
    const double value = eval(elements[u]);
    if (value < best.value) best = {elements[u], value};
    elements[t] |= elements[u];
    elements.erase(elements.begin() + static_cast<std::ptrdiff_t>(u));
  }
  return best;
}

SubsetOptimum queyranne_min(const PairWeights& pairs) {
  return queyranne_min(pairs.c(), [&](ClassSet a) { return z_symmetric(pairs, a); });
}

}  // namespace widc
