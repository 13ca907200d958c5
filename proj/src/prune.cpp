#include "widc/prune.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "widc/error.hpp"
#include "widc/kernels.hpp"
#include "widc/random.hpp"

namespace widc {

namespace {

constexpr double kErrorTol = 1e-12;

// Vote totals and rule coverage of a committee over a sample.
struct CoverageTable {
  std::vector<int> totals;                     // examples x c
  std::vector<std::vector<std::size_t>> cover; // per rule, ascending example indices
  std::vector<std::uint64_t> obs_hash;
  std::vector<VoteVector> votes;

  CoverageTable(const DecisionCommittee& dc, const Sample& sample)
      : totals(sample.size() * dc.c(), 0), cover(dc.size()), obs_hash(sample.size()) {
    const std::size_t c = dc.c();
    for (const auto& r : dc.rules()) votes.push_back(r.votes);
    for (std::size_t i = 0; i < sample.size(); ++i) {
      obs_hash[i] = sample[i].observation.hash();
      for (std::size_t r = 0; r < dc.size(); ++r) {
        if (!dc.rules()[r].monomial.satisfied_by_unchecked(sample[i].observation)) continue;
        cover[r].push_back(i);
        for (std::size_t j = 0; j < c; ++j) totals[i * c + j] += votes[r][j];
      }
    }
  }

  void remove(std::size_t r, std::size_t c) {
    for (auto i : cover[r])
      for (std::size_t j = 0; j < c; ++j) totals[i * c + j] -= votes[r][j];
  }
};

DecisionCommittee rebuild(const DecisionCommittee& dc, const std::vector<bool>& keep, const Sample& default_sample) {
  DecisionCommittee out(dc.n(), dc.c());
  out.set_class_names({dc.class_names().begin(), dc.class_names().end()});
  out.set_variable_names({dc.variable_names().begin(), dc.variable_names().end()});
  for (std::size_t r = 0; r < dc.size(); ++r)
    if (keep[r]) out.add_rule(dc.rules()[r]);
  if (!default_sample.empty()) out.set_default(compute_default_vector(out, default_sample));
  return out;
}

double local_error(const Sample& sample, std::span<const std::size_t> local, std::span<const int> totals,
                   const DefaultVector& d, std::span<const std::uint64_t> obs_hash, std::uint64_t tie_seed) {
  const std::size_t c = sample.c();
  double wrong = 0.0, total = 0.0;
  for (auto i : local) {
    const auto predicted = classify_totals(totals.subspan(i * c, c), d, tie_seed, obs_hash[i]);
    if (!sample[i].classes.test(predicted)) wrong += sample[i].weight;
    total += sample[i].weight;
  }
  return wrong / total;
}

}  // namespace

PessimisticResult prune_pessimistic(const DecisionCommittee& dc, const Sample& sample, std::uint64_t tie_seed,
                                    bool parallel) {
  if (dc.size() == 0) {
    PessimisticResult result{dc, {}, sample.empty() ? 0.0 : error_rate(dc, sample, tie_seed)};
    return result;
  }
  if (sample.empty()) throw PreconditionError("pruning needs a nonempty sample");
  const std::size_t c = dc.c();
  CoverageTable table(dc, sample);

  std::vector<std::size_t> active(dc.size());
  std::iota(active.begin(), active.end(), 0);
  std::vector<bool> alive(dc.size(), true);

  PessimisticResult result;
  result.initial_error = kernels::error_from_totals(sample, table.totals, table.obs_hash, tie_seed);
  double best_error = result.initial_error;
  std::vector<bool> best_keep = alive;
  SizeMetrics size = size_metrics(dc);

  while (!active.empty()) {
    const kernels::RemovalScoring problem{&sample, table.totals, table.obs_hash, table.cover,
                                          table.votes, active, tie_seed};
    const auto errors = parallel ? kernels::removal_errors_parallel(problem) : kernels::removal_errors_serial(problem);

    std::size_t pick = 0;
    for (std::size_t k = 1; k < active.size(); ++k) {
      const double diff = errors[k] - errors[pick];
      if (diff < -kErrorTol) {
        pick = k;
      } else if (diff <= kErrorTol) {
        const auto lk = dc.rules()[active[k]].monomial.literal_count();
        const auto lp = dc.rules()[active[pick]].monomial.literal_count();
        if (lk > lp) pick = k;
      }
    }
    const std::size_t removed = active[pick];
    const double error = errors[pick];
    table.remove(removed, c);
    alive[removed] = false;
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(pick));
    size.rules -= 1;
    size.literals -= dc.rules()[removed].monomial.literal_count();
    result.trace.push_back({removed, error, size.rules, size.literals});

    if (error <= best_error + kErrorTol) {
      best_error = std::min(best_error, error);
      best_keep = alive;
    }
  }
  result.committee = rebuild(dc, best_keep, sample);
  return result;
}

std::size_t set_bound(const DecisionCommittee& dc, std::size_t excluded, const Sample& sample) {
  if (excluded >= dc.size()) throw PreconditionError("excluded rule index out of range");
  std::size_t best = 0;
  for (const auto& e : sample) {
    std::size_t literals = 0;
    for (std::size_t r = 0; r < dc.size(); ++r)
      if (r != excluded && dc.rules()[r].monomial.satisfied_by_unchecked(e.observation))
        literals += dc.rules()[r].monomial.literal_count();
    best = std::max(best, literals);
  }
  return best;
}

double penalty(std::size_t set_value, std::size_t n, double delta, std::size_t local_count) {
  if (n < 1) throw PreconditionError("penalty needs n >= 1");
  if (local_count < 1) throw PreconditionError("penalty needs a nonempty local sample");
  if (!(delta > 0.0 && delta < 1.0)) throw PreconditionError("delta must lie in (0, 1)");
  const double numerator =
      (static_cast<double>(set_value) + 2.0) * std::log(static_cast<double>(n)) + std::log(1.0 / delta);
  return std::sqrt(numerator / static_cast<double>(local_count));
}

Sample resample(const Sample& sample, std::size_t target, std::uint64_t seed) {
  if (sample.empty()) throw PreconditionError("cannot resample an empty sample");
  Rng rng(seed);
  Sample out(sample.n(), sample.c());
  const double w = 1.0 / static_cast<double>(target);
  for (std::size_t t = 0; t < target; ++t) {
    Example e = sample[static_cast<std::size_t>(uniform_below(rng, sample.size()))];
    e.weight = w;
    out.add(std::move(e));
  }
  return out;
}

DecisionCommittee prune_optimistic(const DecisionCommittee& dc, const Sample& sample, const PenaltyParams& params,
                                   std::uint64_t tie_seed) {
  if (!(params.delta > 0.0 && params.delta < 1.0)) throw PreconditionError("delta must lie in (0, 1)");
  if (params.resample_target < 1) throw PreconditionError("resample target must be positive");
  if (dc.size() == 0 || sample.empty()) return dc;

  const Sample work = sample.size() < params.resample_target ? resample(sample, params.resample_target, params.seed)
                                                             : sample;
  const std::size_t c = dc.c();
  CoverageTable table(dc, work);
  std::vector<bool> alive(dc.size(), true);

  // Literal count of the alive rules each example satisfies.
  std::vector<std::size_t> satisfied_literals(work.size(), 0);
  for (std::size_t r = 0; r < dc.size(); ++r)
    for (auto i : table.cover[r]) satisfied_literals[i] += dc.rules()[r].monomial.literal_count();

  std::vector<std::size_t> order(dc.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return dc.rules()[a].monomial.literal_count() > dc.rules()[b].monomial.literal_count();
  });

  std::vector<int> without;
  for (auto r : order) {
    const auto& local = table.cover[r];
    const std::size_t lits = dc.rules()[r].monomial.literal_count();
    bool remove = local.empty();
    if (!remove) {
      const DefaultVector d_with = default_from_totals(table.totals, work);
      const double err_with = local_error(work, local, table.totals, d_with, table.obs_hash, tie_seed);

      without = table.totals;
      for (auto i : local)
        for (std::size_t j = 0; j < c; ++j) without[i * c + j] -= table.votes[r][j];
      const DefaultVector d_without = default_from_totals(without, work);
      const double err_without = local_error(work, local, without, d_without, table.obs_hash, tie_seed);

      // Literals of the other alive rules only.
      std::vector<bool> in_local(work.size(), false);
      for (auto i : local) in_local[i] = true;
      std::size_t bound = 0;
      for (std::size_t i = 0; i < work.size(); ++i)
        bound = std::max(bound, satisfied_literals[i] - (in_local[i] ? lits : 0));
      const double alpha = penalty(bound, dc.n(), params.delta, local.size());
      remove = err_with + alpha >= err_without;
    }
    if (remove) {
      table.remove(r, c);
      for (auto i : local) satisfied_literals[i] -= lits;
      alive[r] = false;
    }
  }
  return rebuild(dc, alive, sample);
}

void write_prune_trace_csv(std::ostream& os, const PruneTrace& trace) {
  os << "step,rule_id,error,r_DC,l_DC\n";
  const auto precision = os.precision(17);
  for (std::size_t s = 0; s < trace.size(); ++s)
    os << s + 1 << ',' << trace[s].rule_id << ',' << trace[s].error << ',' << trace[s].rules << ','
       << trace[s].literals << '\n';
  os.precision(precision);
}

}  // namespace widc
