// Serial reference vs OpenMP kernels on synthetic problems.

#include <benchmark/benchmark.h>

#include <vector>

#include "widc/committee.hpp"
#include "widc/kernels.hpp"
#include "widc/partition.hpp"
#include "widc/random.hpp"
#include "widc/sample.hpp"

namespace {

using namespace widc;

// Random bits, labels from a small DNF with 10% label noise.
Sample make_sample(std::size_t examples, std::size_t n, std::size_t c, std::uint64_t seed) {
  Rng rng(seed);
  Sample s(n, c);
  for (std::size_t e = 0; e < examples; ++e) {
    Observation o(n);
    for (std::size_t k = 0; k < n; ++k) o.set(k, rng() & 1u);
    std::size_t label = (o.test(0) && o.test(1)) ? 1 : (o.test(2) ? 2 % c : 0);
    if (uniform01(rng) < 0.1) label = static_cast<std::size_t>(uniform_below(rng, c));
    s.add(Example::single(std::move(o), label, c, 1.0));
  }
  s.normalize();
  return s;
}

std::vector<Monomial> some_monomials(std::size_t n, std::size_t count) {
  std::vector<Monomial> out;
  for (std::size_t m = 0; m < count; ++m) {
    Monomial mono(n);
    mono.add({(3 * m) % n, Polarity::Positive});
    mono.add({(3 * m + 1) % n, m % 2 ? Polarity::Negative : Polarity::Positive});
    out.push_back(std::move(mono));
  }
  return out;
}

struct LiteralFixture {
  Sample sample;
  std::vector<std::uint32_t> cell_of;
  std::vector<GroupTally> cells;
  std::vector<std::size_t> cover;
  std::vector<Literal> candidates;

  LiteralFixture(std::size_t examples, std::size_t n) : sample(make_sample(examples, n, 3, 7)) {
    const PartitionState state(sample, some_monomials(n, 8));
    cell_of.resize(sample.size());
    for (const auto& [sig, cell] : state.cells()) {
      for (auto i : cell.members) cell_of[i] = static_cast<std::uint32_t>(cells.size());
      cells.push_back(cell.tally);
    }
    for (std::size_t i = 0; i < sample.size(); ++i) cover.push_back(i);
    for (std::size_t v = 0; v < n; ++v)
      for (auto p : {Polarity::Positive, Polarity::Negative}) candidates.push_back({v, p});
  }
  kernels::LiteralScoring problem() const { return {&sample, cell_of, cells, cover, candidates}; }
};

struct RemovalFixture {
  Sample sample;
  std::vector<int> totals;
  std::vector<std::uint64_t> hashes;
  std::vector<std::vector<std::size_t>> coverage;
  std::vector<VoteVector> votes;
  std::vector<std::size_t> candidates;

  RemovalFixture(std::size_t examples, std::size_t rules) : sample(make_sample(examples, 32, 3, 11)) {
    const auto monomials = some_monomials(32, rules);
    const std::size_t c = sample.c();
    totals.assign(sample.size() * c, 0);
    Rng rng(5);
    for (std::size_t r = 0; r < rules; ++r) {
      VoteVector v(c);
      for (std::size_t j = 0; j < c; ++j) v.set(j, static_cast<int>(uniform_below(rng, 3)) - 1);
      votes.push_back(v);
      coverage.emplace_back();
      candidates.push_back(r);
    }
    for (std::size_t i = 0; i < sample.size(); ++i) {
      hashes.push_back(sample[i].observation.hash());
      for (std::size_t r = 0; r < rules; ++r) {
        if (!monomials[r].satisfied_by_unchecked(sample[i].observation)) continue;
        coverage[r].push_back(i);
        for (std::size_t j = 0; j < c; ++j) totals[i * c + j] += votes[r][j];
      }
    }
  }
  kernels::RemovalScoring problem() const { return {&sample, totals, hashes, coverage, votes, candidates, 3}; }
};

void BM_ScoreLiterals(benchmark::State& state, bool parallel) {
  const LiteralFixture f(static_cast<std::size_t>(state.range(0)), 64);
  const auto p = f.problem();
  for (auto _ : state)
    benchmark::DoNotOptimize(parallel ? kernels::score_literals_parallel(p) : kernels::score_literals_serial(p));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.candidates.size()));
}

void BM_RemovalErrors(benchmark::State& state, bool parallel) {
  const RemovalFixture f(static_cast<std::size_t>(state.range(0)), 24);
  const auto p = f.problem();
  for (auto _ : state)
    benchmark::DoNotOptimize(parallel ? kernels::removal_errors_parallel(p) : kernels::removal_errors_serial(p));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.candidates.size()));
}

}  // namespace

BENCHMARK_CAPTURE(BM_ScoreLiterals, serial, false)->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(BM_ScoreLiterals, omp, true)->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(BM_RemovalErrors, serial, false)->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(BM_RemovalErrors, omp, true)->Arg(1000)->Arg(10000);

BENCHMARK_MAIN();
