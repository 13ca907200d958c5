#include "widc/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

#include "widc/error.hpp"
#include "widc/random.hpp"
#include "widc/submodular.hpp"

namespace widc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::size_t pick_between(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(uniform_below(rng, hi - lo + 1));
}

PairWeights single_label_pairs(std::span<const double> w) {
  const std::size_t c = w.size();
  PairWeights p(c);
  for (std::size_t j = 0; j < c; ++j)
    for (std::size_t k = 0; k < c; ++k)
      if (j != k) p.at(j, k) = w[j] / static_cast<double>(c - 1);
  return p;
}

// Off-diagonal entries in [0, 1), about a quarter of them zero.
PairWeights random_pairs(Rng& rng, std::size_t c) {
  PairWeights p(c);
  for (std::size_t j = 0; j < c; ++j)
    for (std::size_t k = 0; k < c; ++k) {
      if (j == k) continue;
      const double draw = uniform01(rng);
      p.at(j, k) = uniform01(rng) < 0.25 ? 0.0 : draw;
    }
  return p;
}

}  // namespace

bool VerifyReport::passed() const noexcept {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteReport& s) { return s.passed(); });
}

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names{"monotone-optimality", "two-class-table", "multilabel-bound",
                                              "submodularity", "symmetric-minimization"};
  return names;
}

SuiteReport verify_monotone_optimality(std::uint64_t seed, std::size_t instances, double tol) {
  const auto start = Clock::now();
  SuiteReport report{"monotone-optimality"};
  Rng rng(seed);
  for (std::size_t t = 0; t < instances; ++t) {
    const std::size_t c = pick_between(rng, 2, 6);
    std::vector<double> w(c);
    for (auto& x : w) {
      const double draw = uniform01(rng);
      x = uniform01(rng) < 0.2 ? 0.0 : draw;
    }
    // Some instances get a repeated weight.
    if (c > 2 && uniform01(rng) < 0.2) w[1] = w[0];
    const VoteVector v = assign_vector(w);
    const double z = z_single_label(w, v);
    const auto best = brute_force_vector(single_label_pairs(w));
    const double dev = std::abs(z - best.z);
    bool monotone = true;
    for (std::size_t j = 0; j < c; ++j)
      for (std::size_t k = 0; k < c; ++k)
        if (w[j] < w[k] && v[j] > v[k]) monotone = false;
    ++report.cases;
    report.max_deviation = std::max(report.max_deviation, dev);
    if (dev > tol || !monotone) ++report.failures;
  }
  report.seconds = seconds_since(start);
  return report;
}

SuiteReport verify_two_class_table(std::uint64_t seed, const TwoClassThresholds& thresholds, std::size_t points,
                                   double tol) {
  const auto start = Clock::now();
  SuiteReport report{"two-class-table"};
  Rng rng(seed);
  const double cuts[4] = {std::exp(1.5), std::exp(0.5), std::exp(-0.5), std::exp(-1.5)};
  for (std::size_t t = 0; t < points; ++t) {
    double ratio;
    if (t < 4) {
      ratio = cuts[t];
    } else if (t < 200) {
      ratio = cuts[t % 4] * (1.0 + (2.0 * uniform01(rng) - 1.0) * 1e-6);
    } else {
      ratio = std::exp(-2.5 + 5.0 * uniform01(rng));
    }
    const double w_minus = 0.1 + uniform01(rng);
    const double w_plus = ratio * w_minus;
    const VoteVector v = assign_vector_two_class(w_minus, w_plus, thresholds);
    const std::vector<double> w{w_minus, w_plus};
    const double z = z_single_label(w, v);
    const double best = brute_force_vector(single_label_pairs(w)).z;
    const double dev = z - best;
    ++report.cases;
    report.max_deviation = std::max(report.max_deviation, std::abs(dev));
    if (dev > tol * std::max(1.0, best)) ++report.failures;
  }
  report.seconds = seconds_since(start);
  return report;
}

SuiteReport verify_multilabel_bound(std::uint64_t seed, std::size_t instances) {
  const auto start = Clock::now();
  SuiteReport report{"multilabel-bound"};
  Rng rng(seed);
  for (std::size_t t = 0; t < instances; ++t) {
    const std::size_t c = pick_between(rng, 4, 8);
    const std::size_t k_max = pick_between(rng, 1, c / 2);
    const std::size_t count = pick_between(rng, 3, 30);
    std::vector<Example> examples;
    for (std::size_t e = 0; e < count; ++e) {
      const std::size_t h = pick_between(rng, 1, k_max);
      std::vector<std::size_t> classes(c);
      for (std::size_t j = 0; j < c; ++j) classes[j] = j;
      shuffle(classes, rng);
      Example ex;
      ex.observation = Observation(1);
      ex.classes = BitVector(c);
      for (std::size_t j = 0; j < h; ++j) ex.classes.set(classes[j]);
      ex.weight = 0.01 + uniform01(rng);
      examples.push_back(std::move(ex));
    }
    const std::size_t k = max_label_count(examples);
    const auto pairs = rankloss_pair_weights(examples, c);
    std::vector<Example> split;
    for (const auto& ex : examples)
      for (auto& part : multilabel_split(ex)) split.push_back(std::move(part));
    const VoteVector v = assign_vector(class_weights(split, c));
    const double z = z_ranking(pairs, v);
    const double z_star = brute_force_vector(pairs).z;
    const double bound = z_star * (1.0 + std::exp(1.0) / static_cast<double>(c - k));
    ++report.cases;
    if (bound > 0) report.max_deviation = std::max(report.max_deviation, z / bound);
    if (!multilabel_bound_holds(pairs, v, c, k)) ++report.failures;
  }
  report.seconds = seconds_since(start);
  return report;
}

SuiteReport verify_submodularity(std::uint64_t seed, std::size_t instances, double tol) {
  const auto start = Clock::now();
  SuiteReport report{"submodularity"};
  Rng rng(seed);
  for (std::size_t t = 0; t < instances; ++t) {
    const std::size_t c = pick_between(rng, 2, 10);
    SetFunctionInstance inst{random_pairs(rng, c), -2.0 + 4.0 * uniform01(rng)};
    const ClassSet a = rng() & full_set(c);
    const ClassSet b = rng() & full_set(c);
    const double lhs = f_eval(inst, a | b) + f_eval(inst, a & b);
    const double rhs = f_eval(inst, a) + f_eval(inst, b);
    ++report.cases;
    report.max_deviation = std::max(report.max_deviation, std::max(0.0, lhs - rhs));
    if (lhs > rhs + tol) ++report.failures;
  }
  report.seconds = seconds_since(start);
  return report;
}

SuiteReport verify_symmetric_minimization(std::uint64_t seed, std::size_t instances, double tol) {
  const auto start = Clock::now();
  SuiteReport report{"symmetric-minimization"};
  Rng rng(seed);
  for (std::size_t t = 0; t < instances; ++t) {
    const std::size_t c = pick_between(rng, 3, 10);
    const auto pairs = random_pairs(rng, c);
    const double q = queyranne_min(pairs).value;
    const double b = brute_force_min(pairs).value;
    const double dev = std::abs(q - b);
    ++report.cases;
    report.max_deviation = std::max(report.max_deviation, dev);
    if (dev > tol) ++report.failures;
  }
  report.seconds = seconds_since(start);
  return report;
}

VerifyReport run_verify(const VerifyOptions& options) {
  const auto& names = verify_suite_names();
  for (const auto& s : options.suites)
    if (std::find(names.begin(), names.end(), s) == names.end())
      throw PreconditionError("unknown verification suite '" + s + "'");
  auto wanted = [&](const std::string& name) {
    return options.suites.empty() || std::find(options.suites.begin(), options.suites.end(), name) != options.suites.end();
  };
  VerifyReport report;
  const double tol = options.tolerance;
  if (wanted(names[0])) report.suites.push_back(verify_monotone_optimality(derive_seed(options.seed, 1), 500, tol));
  if (wanted(names[1]))
    report.suites.push_back(verify_two_class_table(derive_seed(options.seed, 2), options.thresholds, 1000, tol));
  if (wanted(names[2])) report.suites.push_back(verify_multilabel_bound(derive_seed(options.seed, 3)));
  if (wanted(names[3])) report.suites.push_back(verify_submodularity(derive_seed(options.seed, 4), 1000, tol));
  if (wanted(names[4])) report.suites.push_back(verify_symmetric_minimization(derive_seed(options.seed, 5), 100, tol));
  return report;
}

void write_verify_csv(std::ostream& os, const VerifyReport& report, bool include_timing) {
  const auto precision = os.precision(6);
  os << "suite,cases,failures,max_deviation" << (include_timing ? ",seconds" : "") << ",result\n";
  for (const auto& s : report.suites) {
    os << s.name << ',' << s.cases << ',' << s.failures << ',' << s.max_deviation;
    if (include_timing) os << ',' << s.seconds;
    os << ',' << (s.passed() ? "pass" : "FAIL") << '\n';
  }
  os.precision(precision);
}

nlohmann::json to_json(const VerifyReport& report, bool include_timing) {
  auto arr = nlohmann::json::array();
  for (const auto& s : report.suites) {
    nlohmann::json j{{"suite", s.name},
                     {"cases", s.cases},
                     {"failures", s.failures},
                     {"max_deviation", s.max_deviation},
                     {"passed", s.passed()}};
    if (include_timing) j["seconds"] = s.seconds;
    arr.push_back(std::move(j));
  }
  return {{"suites", std::move(arr)}, {"passed", report.passed()}};
}

}  // namespace widc
