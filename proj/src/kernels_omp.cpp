#include <omp.h>

#include "kernels_common.hpp"

namespace widc::kernels {

std::vector<double> score_literals_parallel(const LiteralScoring& problem) {
  const auto prep = detail::prepare(problem);
  const auto count = static_cast<std::ptrdiff_t>(problem.candidates.size());
  std::vector<double> out(problem.candidates.size());
#pragma omp parallel
  {
    std::vector<GroupTally> in(prep.touched.size(), GroupTally(problem.sample->c()));
#pragma omp for schedule(dynamic, 1)
    for (std::ptrdiff_t k = 0; k < count; ++k)
      out[static_cast<std::size_t>(k)] = detail::score_one(problem, prep, problem.candidates[static_cast<std::size_t>(k)], in);
  }
  return out;
}

std::vector<double> removal_errors_parallel(const RemovalScoring& problem) {
  const auto count = static_cast<std::ptrdiff_t>(problem.candidates.size());
  std::vector<double> out(problem.candidates.size());
#pragma omp parallel
  {
    std::vector<int> scratch;
#pragma omp for schedule(dynamic, 1)
    for (std::ptrdiff_t k = 0; k < count; ++k)
      out[static_cast<std::size_t>(k)] =
          detail::removal_error_one(problem, problem.candidates[static_cast<std::size_t>(k)], scratch);
  }
  return out;
}

}  // namespace widc::kernels
