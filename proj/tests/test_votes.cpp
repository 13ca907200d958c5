#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "widc/error.hpp"
#include "widc/votes.hpp"

using namespace widc;

namespace {

Example ex(const char* classes, double w) {
  Example e;
  e.observation = Observation(1);
  e.classes = BitVector::from_string(classes);
  e.weight = w;
  return e;
}

std::vector<std::vector<double>> dense(const PairWeights& p) {
  std::vector<std::vector<double>> m(p.c(), std::vector<double>(p.c()));
  for (std::size_t j = 0; j < p.c(); ++j)
    for (std::size_t k = 0; k < p.c(); ++k) m[j][k] = p.at(j, k);
  return m;
}

PairWeights from_class_weights(const std::vector<double>& w) {
  PairWeights p(w.size());
  for (std::size_t j = 0; j < w.size(); ++j)
    for (std::size_t k = 0; k < w.size(); ++k)
      if (j != k) p.at(j, k) = w[j] / static_cast<double>(w.size() - 1);
  return p;
}

// Expected Delta from the five-row table, written out independently.
int table_delta(double w_minus, double w_plus) {
  if (w_minus == 0.0) return 2;
  const double r = w_plus / w_minus;
  if (r >= std::exp(1.5)) return 2;
  if (r >= std::exp(0.5)) return 1;
  if (r >= std::exp(-0.5)) return 0;
  if (r >= std::exp(-1.5)) return -1;
  return -2;
}

const double kE = std::exp(1.0);

}  // namespace

TEST_CASE("rank-loss pair weights") {
  const auto a = rankloss_pair_weights(std::vector<Example>{ex("100", 1.0)}, 3);
  CHECK(a.at(0, 1) == doctest::Approx(0.5));
  CHECK(a.at(0, 2) == doctest::Approx(0.5));
  CHECK(a.total() == doctest::Approx(1.0));
  const auto b = rankloss_pair_weights(std::vector<Example>{ex("110", 1.0)}, 3);
  CHECK(b.at(0, 2) == doctest::Approx(0.5));
  CHECK(b.at(1, 2) == doctest::Approx(0.5));
  CHECK(b.total() == doctest::Approx(1.0));
  CHECK(rankloss_pair_weights(std::vector<Example>{}, 3).total() == 0.0);
  const auto all = rankloss_pair_weights(std::vector<Example>{ex("111", 1.0), ex("010", 0.2)}, 3);
  CHECK(all.skipped_all_class == 1);
  CHECK(all.total() == doctest::Approx(0.2));
  for (std::size_t j = 0; j < 3; ++j) CHECK(all.at(j, j) == 0.0);
}

TEST_CASE("z_ranking") {
  PairWeights p(2);
  p.at(1, 0) = 0.9;
  p.at(0, 1) = 0.1;
  CHECK(z_ranking(p, VoteVector{0, 0}) == doctest::Approx(1.0));
  CHECK(z_ranking(p, VoteVector{-1, 1}) == doctest::Approx(0.9 / kE + 0.1 * kE));
  CHECK(z_ranking(p, VoteVector{-1, 1}) == doctest::Approx(0.6029).epsilon(1e-4));
  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    const std::size_t c = 2 + uniform_below(rng, 5);
    PairWeights m(c);
    VoteVector v(c), neg(c);
    for (std::size_t j = 0; j < c; ++j) {
      v.set(j, static_cast<int>(uniform_below(rng, 3)) - 1);
      neg.set(j, -v[j]);
      for (std::size_t k = 0; k < c; ++k)
        if (j != k) m.at(j, k) = uniform01(rng);
    }
    CHECK(z_ranking(m, neg) == doctest::Approx(z_ranking(m.transposed(), v)));
  }
}

TEST_CASE("property: aggregated Z equals the triple-by-triple sum") {
  Rng rng(4);
  for (int t = 0; t < 100; ++t) {
    const std::size_t c = 2 + uniform_below(rng, 5);
    std::vector<Example> examples;
    for (int e = 0; e < 12; ++e) {
      Example x;
      x.observation = Observation(1);
      x.classes = BitVector(c);
      for (std::size_t j = 0; j < c; ++j) x.classes.set(j, uniform01(rng) < 0.4);
      if (x.classes.none()) x.classes.set(uniform_below(rng, c));
      x.weight = uniform01(rng) + 0.01;
      examples.push_back(std::move(x));
    }
    VoteVector v(c);
    for (std::size_t j = 0; j < c; ++j) v.set(j, static_cast<int>(uniform_below(rng, 3)) - 1);
    CHECK(z_ranking(rankloss_pair_weights(examples, c), v) ==
          doctest::Approx(oracle::z_from_examples(examples, c, v.values())).epsilon(1e-12));
  }
}

TEST_CASE("assign_vector examples") {
  CHECK(assign_vector(std::vector<double>{0.1, 0.9}) == VoteVector{-1, 1});
  const std::vector<double> w{0.05, 0.05, 0.9};
  const auto v = assign_vector(w);
  CHECK(v == VoteVector{-1, -1, 1});
  CHECK(z_single_label(w, v) == doctest::Approx(oracle::min_z_over_all_vectors(dense(from_class_weights(w)))));
  CHECK(assign_vector(std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3}) == VoteVector{0, 0, 0});
  CHECK(assign_vector(std::vector<double>{0, 0, 0, 0}) == VoteVector{0, 0, 0, 0});
  CHECK_THROWS_AS(assign_vector(std::vector<double>{0.2, -0.1}), PreconditionError);
}

TEST_CASE("property: monotone search is optimal for single-label weights") {
  Rng rng(6);
  for (int t = 0; t < 400; ++t) {
    const std::size_t c = 2 + uniform_below(rng, 5);
    std::vector<double> w(c);
    for (auto& x : w) x = uniform01(rng) < 0.15 ? 0.0 : uniform01(rng);
    const auto v = assign_vector(w);
    CHECK(z_single_label(w, v) ==
          doctest::Approx(oracle::min_z_over_all_vectors(dense(from_class_weights(w)))).epsilon(1e-12));
    CHECK(z_single_label(w, v) == doctest::Approx(z_ranking(from_class_weights(w), v)).epsilon(1e-12));
    for (std::size_t j = 0; j < c; ++j)
      for (std::size_t k = 0; k < c; ++k)
        if (w[j] < w[k]) CHECK(v[j] <= v[k]);
    // Argmin invariance under scaling.
    std::vector<double> scaled(w);
    for (auto& x : scaled) x *= 7.5;
    CHECK(assign_vector(scaled) == v);
    CHECK(z_single_label(scaled, v) == doctest::Approx(7.5 * z_single_label(w, v)));
  }
}

TEST_CASE("two-class table") {
  CHECK(assign_vector_two_class(0.1, 0.9) == VoteVector{-1, 1});
  CHECK(assign_vector_two_class(0.5, 0.5) == VoteVector{0, 0});
  CHECK(assign_vector_two_class(0.95, 0.05) == VoteVector{1, -1});
  CHECK(assign_vector_two_class(0.0, 0.3) == VoteVector{-1, 1});
  CHECK(assign_vector_two_class(0.3, 0.0) == VoteVector{1, -1});
  CHECK(assign_vector_two_class(1.0, 2.0) == VoteVector{-1, 0});
  CHECK(assign_vector_two_class(2.0, 1.0) == VoteVector{0, -1});
  CHECK_THROWS_AS(assign_vector_two_class(0.0, 0.0), PreconditionError);
  CHECK_THROWS_AS(assign_vector_two_class(-1.0, 1.0), PreconditionError);
}

TEST_CASE("property: two-class table agrees with the general search off the cut points") {
  Rng rng(7);
  for (int t = 0; t < 1000; ++t) {
    const double ratio = std::exp(-3.0 + 6.0 * uniform01(rng));
    const double w_minus = 0.05 + uniform01(rng);
    const double w_plus = ratio * w_minus;
    const auto v = assign_vector_two_class(w_minus, w_plus);
    CHECK(v[1] - v[0] == table_delta(w_minus, w_plus));
    const auto g = assign_vector(std::vector<double>{w_minus, w_plus});
    CHECK(g[1] - g[0] == v[1] - v[0]);
  }
}

TEST_CASE("canonical shift") {
  CHECK(canonical_shift(VoteVector{0, 1}) == VoteVector{-1, 0});
  CHECK(canonical_shift(VoteVector{1, 1, 1}) == VoteVector{0, 0, 0});
  CHECK(canonical_shift(VoteVector{1, 0, 1}) == VoteVector{0, -1, 0});
  CHECK(canonical_shift(VoteVector{-1, 1}) == VoteVector{-1, 1});
}

TEST_CASE("multilabel split") {
  const auto single = ex("010", 0.4);
  const auto same = multilabel_split(single);
  REQUIRE(same.size() == 1);
  CHECK(same[0].classes == single.classes);
  CHECK(same[0].weight == 0.4);
  const auto parts = multilabel_split(ex("101", 0.6));
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].classes.to_string() == "100");
  CHECK(parts[1].classes.to_string() == "001");
  CHECK(parts[0].weight == doctest::Approx(0.3));
  CHECK(parts[1].weight == doctest::Approx(0.3));
  CHECK_THROWS_AS(multilabel_split(ex("000", 1.0)), PreconditionError);

  Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    const std::size_t c = 2 + uniform_below(rng, 6);
    Example e;
    e.observation = Observation(1);
    e.classes = BitVector(c);
    for (std::size_t j = 0; j < c; ++j) e.classes.set(j, rng() & 1u);
    if (e.classes.none()) e.classes.set(0);
    e.weight = uniform01(rng) + 0.01;
    const auto split = multilabel_split(e);
    double total = 0.0;
    for (const auto& s : split) {
      CHECK(s.label_count() == 1);
      total += s.weight;
    }
    CHECK(total == doctest::Approx(e.weight).epsilon(1e-15));
    const auto before = class_weights(std::vector<Example>{e}, c);
    const auto after = class_weights(split, c);
    for (std::size_t j = 0; j < c; ++j) CHECK(after[j] == doctest::Approx(before[j]).epsilon(1e-15));
  }
}

TEST_CASE("brute-force vector") {
  PairWeights p(2);
  p.at(1, 0) = 0.9;
  p.at(0, 1) = 0.1;
  const auto best = brute_force_vector(p);
  CHECK(best.vector[1] - best.vector[0] == 2);
  CHECK(best.z == doctest::Approx(0.9 / kE + 0.1 * kE));

  Rng rng(10);
  for (int t = 0; t < 50; ++t) {
    const std::size_t c = 2 + uniform_below(rng, 5);
    PairWeights m(c);
    for (std::size_t j = 0; j < c; ++j)
      for (std::size_t k = 0; k < j; ++k) m.at(j, k) = m.at(k, j) = uniform01(rng);
    // Symmetric M: a constant vector is a minimizer.
    CHECK(brute_force_vector(m).z == doctest::Approx(z_ranking(m, VoteVector(c))));
    PairWeights a(c);
    for (std::size_t j = 0; j < c; ++j)
      for (std::size_t k = 0; k < c; ++k)
        if (j != k) a.at(j, k) = uniform01(rng);
    CHECK(brute_force_vector(a).z == doctest::Approx(oracle::min_z_over_all_vectors(dense(a))));
  }
  CHECK_THROWS_AS(brute_force_vector(PairWeights(13)), PreconditionError);
}

TEST_CASE("multilabel bound") {
  Rng rng(12);
  auto instance = [&](std::size_t c, std::size_t k, std::vector<Example>& examples) {
    examples.clear();
    for (int e = 0; e < 15; ++e) {
      Example x;
      x.observation = Observation(1);
      x.classes = BitVector(c);
      const std::size_t h = 1 + uniform_below(rng, k);
      while (x.classes.count() < h) x.classes.set(uniform_below(rng, c));
      x.weight = uniform01(rng) + 0.01;
      examples.push_back(std::move(x));
    }
  };
  auto approx = [](const std::vector<Example>& examples, std::size_t c) {
    std::vector<Example> split;
    for (const auto& e : examples)
      for (auto& s : multilabel_split(e)) split.push_back(s);
    return assign_vector(class_weights(split, c));
  };
  std::vector<Example> examples;
  SUBCASE("single-label data attains the optimum") {
    instance(5, 1, examples);
    const auto pairs = rankloss_pair_weights(examples, 5);
    const auto v = approx(examples, 5);
    CHECK(z_ranking(pairs, v) == doctest::Approx(brute_force_vector(pairs).z));
    CHECK(multilabel_bound_holds(pairs, v, 5, 1));
  }
  SUBCASE("c = 6 and c = 8 with two labels") {
    for (std::size_t c : {6u, 8u})
      for (int t = 0; t < 20; ++t) {
        instance(c, 2, examples);
        const auto pairs = rankloss_pair_weights(examples, c);
        const auto v = approx(examples, c);
        const std::size_t k = max_label_count(examples);
        CHECK(multilabel_bound_holds(pairs, v, c, k));
        CHECK(z_ranking(pairs, v) < oracle::min_z_over_all_vectors(dense(pairs)) * (1.0 + kE / double(c - k)));
      }
  }
  SUBCASE("k >= c is rejected") { CHECK_THROWS_AS(multilabel_bound_holds(PairWeights(3), VoteVector(3), 3, 3), PreconditionError); }
}

TEST_CASE("assign_votes drops all-zero rules and keeps order") {
  Sample s(2, 2);
  s.add(Example::single(BitVector::from_string("10"), 1, 2));
  s.add(Example::single(BitVector::from_string("11"), 1, 2));
  s.add(Example::single(BitVector::from_string("01"), 0, 2));
  s.add(Example::single(BitVector::from_string("00"), 0, 2));
  s.normalize();
  const Literal x0[] = {{0, Polarity::Positive}};
  const Literal x1[] = {{1, Polarity::Positive}};
  const Literal nx0[] = {{0, Polarity::Negative}};
  const std::vector<Monomial> ms{Monomial::from_literals(2, x0), Monomial::from_literals(2, x1),
                                 Monomial::from_literals(2, nx0)};
  const auto rules = assign_votes(s, ms);
  REQUIRE(rules.size() == 2);
  CHECK(rules[0].monomial == ms[0]);
  CHECK(rules[0].votes == VoteVector{-1, 1});
  CHECK(rules[1].monomial == ms[2]);
  CHECK(rules[1].votes == VoteVector{1, -1});
  CHECK(assign_votes(s, ms, false) == rules);
}
