#include "widc/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "widc/error.hpp"

namespace widc {

namespace {

double entropy_of_counts(std::span<const std::size_t> counts, std::size_t total) {
  if (total == 0) return 0.0;
  double h = 0.0;
  for (auto n : counts) {
    if (n == 0) continue;
    const double p = static_cast<double>(n) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

std::size_t distinct_classes(std::span<const std::size_t> counts) {
  return static_cast<std::size_t>(std::count_if(counts.begin(), counts.end(), [](std::size_t n) { return n > 0; }));
}

struct Cut {
  std::size_t position = 0;  // first index of the right part
  double threshold = 0;
  double gain = 0;
};

struct Sorted {
  std::vector<double> values;
  std::vector<std::size_t> labels;
  std::size_t classes = 0;
};

// Best accepted cut of [lo, hi), or nothing when no boundary passes the MDL test.
std::optional<Cut> best_cut(const Sorted& s, std::size_t lo, std::size_t hi) {
  const std::size_t n = hi - lo;
  if (n < 2) return std::nullopt;
  std::vector<std::size_t> all(s.classes, 0), left(s.classes, 0), right(s.classes, 0);
  for (std::size_t i = lo; i < hi; ++i) ++all[s.labels[i]];

  std::optional<std::size_t> best;
  double best_h = 0.0;
  for (std::size_t i = lo + 1; i < hi; ++i) {
    ++left[s.labels[i - 1]];
    if (!(s.values[i - 1] < s.values[i])) continue;
    for (std::size_t k = 0; k < s.classes; ++k) right[k] = all[k] - left[k];
    const std::size_t nl = i - lo, nr = hi - i;
    const double h = (static_cast<double>(nl) * entropy_of_counts(left, nl) +
                      static_cast<double>(nr) * entropy_of_counts(right, nr)) /
                     static_cast<double>(n);
    if (!best || h < best_h) {
      best = i;
      best_h = h;
    }
  }
  if (!best) return std::nullopt;

  std::fill(left.begin(), left.end(), 0);
  for (std::size_t i = lo; i < *best; ++i) ++left[s.labels[i]];
  for (std::size_t k = 0; k < s.classes; ++k) right[k] = all[k] - left[k];
  const std::size_t nl = *best - lo, nr = hi - *best;
  const double h_all = entropy_of_counts(all, n);
  const double h_left = entropy_of_counts(left, nl);
  const double h_right = entropy_of_counts(right, nr);
  const double gain = h_all - best_h;
  const double k = static_cast<double>(distinct_classes(all));
  const double k1 = static_cast<double>(distinct_classes(left));
  const double k2 = static_cast<double>(distinct_classes(right));
  const double delta = std::log2(std::pow(3.0, k) - 2.0) - (k * h_all - k1 * h_left - k2 * h_right);
  const double threshold_gain = (std::log2(static_cast<double>(n - 1)) + delta) / static_cast<double>(n);
  if (!(gain > threshold_gain)) return std::nullopt;
  return Cut{*best, (s.values[*best - 1] + s.values[*best]) / 2.0, gain};
}

}  // namespace

double label_entropy(std::span<const std::size_t> labels) {
  if (labels.empty()) return 0.0;
  const std::size_t classes = *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<std::size_t> counts(classes, 0);
  for (auto l : labels) ++counts[l];
  return entropy_of_counts(counts, labels.size());
}

std::vector<double> discretize(std::span<const double> values, std::span<const std::size_t> labels,
                               std::size_t max_thresholds) {
  if (values.size() != labels.size()) throw DimensionError("values and labels differ in length");
  for (double v : values)
    if (!std::isfinite(v)) throw PreconditionError("discretize needs finite values");
  if (values.empty() || max_thresholds == 0) return {};

  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b] || (values[a] == values[b] && labels[a] < labels[b]);
  });
  Sorted s;
  for (auto i : order) {
    s.values.push_back(values[i]);
    s.labels.push_back(labels[i]);
  }
  s.classes = *std::max_element(s.labels.begin(), s.labels.end()) + 1;
  if (s.values.front() == s.values.back()) return {};

  struct Range {
    std::size_t lo, hi;
    std::optional<Cut> cut;
  };
  std::vector<Range> ranges{{0, s.values.size(), best_cut(s, 0, s.values.size())}};
  std::vector<double> thresholds;
  while (thresholds.size() < max_thresholds) {
    std::optional<std::size_t> pick;
    for (std::size_t r = 0; r < ranges.size(); ++r) {
      if (!ranges[r].cut) continue;
      if (!pick || ranges[r].cut->gain > ranges[*pick].cut->gain) pick = r;
    }
    if (!pick) break;
    const Range chosen = ranges[*pick];
    thresholds.push_back(chosen.cut->threshold);
    const std::size_t mid = chosen.cut->position;
    ranges[*pick] = {chosen.lo, mid, best_cut(s, chosen.lo, mid)};
    ranges.insert(ranges.begin() + static_cast<std::ptrdiff_t>(*pick) + 1, Range{mid, chosen.hi, best_cut(s, mid, chosen.hi)});
  }
  std::sort(thresholds.begin(), thresholds.end());
  return thresholds;
}

}  // namespace widc
