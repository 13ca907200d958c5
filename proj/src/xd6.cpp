#include "widc/xd6.hpp"

#include "widc/error.hpp"
#include "widc/random.hpp"

namespace widc {

bool xd6_target(const Observation& o) {
  if (o.size() < 9) throw DimensionError("xd6 needs at least 9 variables");
  for (std::size_t t = 0; t < 3; ++t)
    if (o.test(3 * t) && o.test(3 * t + 1) && o.test(3 * t + 2)) return true;
  return false;
}

Sample gen_xd6(std::size_t n_examples, double class_noise, double attr_noise, std::uint64_t seed) {
  if (n_examples == 0) throw PreconditionError("gen_xd6 needs at least one example");
  if (!(class_noise >= 0.0 && class_noise <= 1.0)) throw PreconditionError("class noise must lie in [0, 1]");
  if (!(attr_noise >= 0.0 && attr_noise <= 1.0)) throw PreconditionError("attribute noise must lie in [0, 1]");
  Rng rng(seed);
  Sample sample(kXd6Variables, 2);
  const double w = 1.0 / static_cast<double>(n_examples);
  for (std::size_t e = 0; e < n_examples; ++e) {
    const std::uint64_t bits = rng();
    Observation o(kXd6Variables);
    for (std::size_t k = 0; k < kXd6Variables; ++k) o.set(k, (bits >> (63 - k)) & 1u);
    bool label = xd6_target(o);
    // Every draw happens regardless of the rates so that samples at different
    // noise levels share their clean observations.
    if (uniform01(rng) < class_noise) label = !label;
    for (std::size_t k = 0; k < kXd6Variables; ++k)
      if (uniform01(rng) < attr_noise) o.flip(k);
    sample.add(Example::single(std::move(o), label ? 1 : 0, 2, w));
  }
  return sample;
}

}  // namespace widc
