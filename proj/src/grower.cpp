#include "widc/grower.hpp"

#include <algorithm>
#include <ostream>

#include "widc/error.hpp"
#include "widc/kernels.hpp"
#include "widc/partition.hpp"

namespace widc {

std::optional<Monomial> grow_monomial(const Sample& sample, std::span<const Monomial> existing,
                                      const GrowerOptions& options, std::optional<double> z_reference,
                                      std::vector<LiteralStep>* steps, double* z_out) {
  const PartitionState base(sample, {existing.begin(), existing.end()});

  std::vector<std::uint32_t> cell_of(sample.size());
  std::vector<GroupTally> cells;
  cells.reserve(base.cell_count());
  for (const auto& [sig, cell] : base.cells()) {
    for (auto i : cell.members) cell_of[i] = static_cast<std::uint32_t>(cells.size());
    cells.push_back(cell.tally);
  }

  const double z_before = z_reference ? *z_reference : base.z();
  double z_current = z_before;

  Monomial grown(sample.n());
  std::vector<std::size_t> cover(sample.size());
  for (std::size_t i = 0; i < cover.size(); ++i) cover[i] = i;

  std::vector<Literal> candidates;
  while (grown.literal_count() < options.max_literals) {
    candidates.clear();
    for (std::size_t v = 0; v < sample.n(); ++v) {
      if (grown.contains_variable(v)) continue;
      for (auto p : {Polarity::Positive, Polarity::Negative}) {
        const Literal l{v, p};
        const Monomial m = grown.with(l);
        if (std::find(existing.begin(), existing.end(), m) == existing.end()) candidates.push_back(l);
      }
    }
    if (candidates.empty()) break;

    const kernels::LiteralScoring problem{&sample, cell_of, cells, cover, candidates};
    const auto scores = options.parallel ? kernels::score_literals_parallel(problem)
                                         : kernels::score_literals_serial(problem);
    std::size_t best = 0;
    for (std::size_t k = 1; k < scores.size(); ++k)
      if (scores[k] < scores[best]) best = k;
    if (!(scores[best] < z_current - options.min_decrease)) break;

    const Literal chosen = candidates[best];
    grown.add(chosen);
    std::erase_if(cover, [&](std::size_t i) { return !chosen.holds(sample[i].observation); });
    z_current = scores[best];
    if (steps) steps->push_back({existing.size(), chosen, z_current});
  }

  if (grown.empty()) return std::nullopt;
  if (z_out) *z_out = z_current;
  return grown;
}

GrowResult grow_committee(const Sample& sample, const GrowerOptions& options) {
  if (sample.empty()) throw PreconditionError("cannot grow a committee on an empty sample");
  GrowResult result;
  double z = PartitionState(sample, {}).z();
  result.z_trace.push_back(z);
  while (result.monomials.size() < options.max_rules) {
    double z_new = z;
    auto m = grow_monomial(sample, result.monomials, options, z, &result.steps, &z_new);
    if (!m) break;
    result.monomials.push_back(std::move(*m));
    result.z_trace.push_back(z_new);
    z = z_new;
  }
  return result;
}

void write_grow_trace_csv(std::ostream& os, const GrowResult& result) {
  os << "monomial,literal,z\n";
  const auto precision = os.precision(17);
  for (const auto& s : result.steps) os << s.monomial_index << ',' << s.literal.to_string() << ',' << s.z << '\n';
  os.precision(precision);
}

}  // namespace widc
