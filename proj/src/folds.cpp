#include "widc/folds.hpp"

#include <algorithm>

#include "widc/error.hpp"
#include "widc/random.hpp"

namespace widc {

std::vector<Fold> stratified_folds(const Sample& sample, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw PreconditionError("need at least 2 folds");
  if (k > sample.size()) throw PreconditionError("more folds than examples");
  std::vector<std::vector<std::size_t>> groups(sample.c());
  for (std::size_t i = 0; i < sample.size(); ++i) groups[sample[i].first_class()].push_back(i);

  Rng rng(seed);
  std::vector<Fold> folds(k);
  std::size_t next = 0;
  for (auto& g : groups) {
    shuffle(g, rng);
    for (auto i : g) folds[next++ % k].test.push_back(i);
  }
  for (auto& f : folds) {
    std::sort(f.test.begin(), f.test.end());
    std::size_t t = 0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
      if (t < f.test.size() && f.test[t] == i)
        ++t;
      else
        f.train.push_back(i);
    }
  }
  return folds;
}

}  // namespace widc
