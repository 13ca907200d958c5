#include "widc/sample.hpp"

#include "widc/error.hpp"

namespace widc {

Example Example::single(Observation observation, std::size_t cls, std::size_t c, double weight) {
  if (cls >= c) throw DimensionError("class index out of range");
  BitVector classes(c);
  classes.set(cls);
  return {std::move(observation), std::move(classes), weight};
}

std::size_t Example::first_class() const {
  for (std::size_t j = 0; j < classes.size(); ++j)
    if (classes.test(j)) return j;
  throw PreconditionError("example has no class bit set");
}

Sample::Sample(std::size_t n, std::size_t c) : n_(n), c_(c) {
  if (c < 1) throw PreconditionError("a sample needs at least one class");
}

void Sample::add(Example example) {
  if (example.observation.size() != n_)
    throw DimensionError("observation has " + std::to_string(example.observation.size()) +
                         " variables, sample expects " + std::to_string(n_));
  if (example.classes.size() != c_)
    throw DimensionError("class vector has " + std::to_string(example.classes.size()) +
                         " components, sample expects " + std::to_string(c_));
  if (example.classes.none()) throw PreconditionError("example has no class bit set");
  if (!(example.weight > 0.0)) throw PreconditionError("example weight must be positive");
  examples_.push_back(std::move(example));
}

void Sample::normalize() {
  const double total = total_weight();
  if (total <= 0.0) return;
  for (auto& e : examples_) e.weight /= total;
}

double Sample::total_weight() const noexcept {
  double total = 0.0;
  for (const auto& e : examples_) total += e.weight;
  return total;
}

bool Sample::single_label() const noexcept {
  for (const auto& e : examples_)
    if (e.label_count() != 1) return false;
  return true;
}

std::vector<double> Sample::class_distribution() const {
  std::vector<double> d(c_, 0.0);
  double total = 0.0;
  for (const auto& e : examples_) {
    const double share = e.weight / static_cast<double>(e.label_count());
    for (std::size_t j = 0; j < c_; ++j)
      if (e.classes.test(j)) d[j] += share;
    total += e.weight;
  }
  if (total > 0.0)
    for (auto& x : d) x /= total;
  return d;
}

Sample Sample::subset(std::span<const std::size_t> indices) const {
  Sample s(n_, c_);
  for (auto i : indices) s.examples_.push_back(examples_.at(i));
  s.normalize();
  return s;
}

}  // namespace widc
