#include <algorithm>

#include "kernels_common.hpp"

namespace widc::kernels {

namespace detail {

LiteralPrep prepare(const LiteralScoring& problem) {
  LiteralPrep prep;
  prep.slot_of.assign(problem.cells.size(), -1);
  for (auto i : problem.cover) {
    const auto g = problem.cell_of[i];
    if (prep.slot_of[g] < 0) {
      prep.slot_of[g] = 0;
      prep.touched.push_back(g);
    }
  }
  std::sort(prep.touched.begin(), prep.touched.end());
  for (std::size_t s = 0; s < prep.touched.size(); ++s) prep.slot_of[prep.touched[s]] = static_cast<int>(s);
  for (std::size_t g = 0; g < problem.cells.size(); ++g)
    if (prep.slot_of[g] < 0) prep.untouched_z += cell_z(problem.cells[g]);
  return prep;
}

double score_one(const LiteralScoring& problem, const LiteralPrep& prep, const Literal& literal,
                 std::vector<GroupTally>& in) {
  const std::size_t c = problem.sample->c();
  for (auto& t : in) t.clear();
  for (auto i : problem.cover) {
    const Example& e = (*problem.sample)[i];
    if (literal.holds(e.observation)) in[static_cast<std::size_t>(prep.slot_of[problem.cell_of[i]])].add(e);
  }
  double z = prep.untouched_z;
  GroupTally out(c);
  for (std::size_t s = 0; s < prep.touched.size(); ++s) {
    const GroupTally& whole = problem.cells[prep.touched[s]];
    out.assign_difference(whole, in[s]);
    z += cell_z(in[s]) + cell_z(out);
  }
  return 2.0 * z;
}

double removal_error_one(const RemovalScoring& problem, std::size_t rule, std::vector<int>& scratch) {
  const std::size_t c = problem.sample->c();
  scratch.assign(problem.totals.begin(), problem.totals.end());
  const VoteVector& v = problem.votes[rule];
  for (auto i : problem.coverage[rule])
    for (std::size_t j = 0; j < c; ++j) scratch[i * c + j] -= v[j];
  return error_from_totals(*problem.sample, scratch, problem.obs_hash, problem.tie_seed);
}

}  // namespace detail

std::vector<double> score_literals_serial(const LiteralScoring& problem) {
  const auto prep = detail::prepare(problem);
  std::vector<GroupTally> in(prep.touched.size(), GroupTally(problem.sample->c()));
  std::vector<double> out(problem.candidates.size());
  for (std::size_t k = 0; k < problem.candidates.size(); ++k)
    out[k] = detail::score_one(problem, prep, problem.candidates[k], in);
  return out;
}

std::vector<double> removal_errors_serial(const RemovalScoring& problem) {
  std::vector<double> out(problem.candidates.size());
  std::vector<int> scratch;
  for (std::size_t k = 0; k < problem.candidates.size(); ++k)
    out[k] = detail::removal_error_one(problem, problem.candidates[k], scratch);
  return out;
}

double error_from_totals(const Sample& sample, std::span<const int> totals,
                         std::span<const std::uint64_t> obs_hash, std::uint64_t tie_seed) {
  const std::size_t c = sample.c();
  const DefaultVector d = default_from_totals(totals, sample);
  double wrong = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const std::size_t predicted = classify_totals(totals.subspan(i * c, c), d, tie_seed, obs_hash[i]);
    if (!sample[i].classes.test(predicted)) wrong += sample[i].weight;
    total += sample[i].weight;
  }
  return wrong / total;
}

}  // namespace widc::kernels
