#include "widc/pipeline.hpp"

#include <chrono>
#include <exception>
#include <ostream>

#include "widc/error.hpp"
#include "widc/folds.hpp"
#include "widc/random.hpp"
#include "widc/votes.hpp"
#include "widc/xd6.hpp"

namespace widc {

namespace {

constexpr std::uint64_t kTieStream = 0x7469;
constexpr std::uint64_t kResampleStream = 0x7273;
constexpr std::uint64_t kFoldStream = 0x666f;
constexpr std::uint64_t kSweepStream = 0x7377;

double mean(const std::vector<FoldResult>& folds, double FoldResult::*field) {
  double s = 0.0;
  for (const auto& f : folds) s += f.*field;
  return s / static_cast<double>(folds.size());
}

template <typename Body>
void run_indexed(std::size_t count, bool parallel, Body body) {
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

std::string mode_name(PruneMode mode) {
  switch (mode) {
    case PruneMode::Optimistic:
      return "o";
    case PruneMode::Pessimistic:
      return "p";
    case PruneMode::None:
      return "none";
  }
  return "?";
}

std::optional<PruneMode> parse_mode(const std::string& name) {
  if (name == "o") return PruneMode::Optimistic;
  if (name == "p") return PruneMode::Pessimistic;
  if (name == "none") return PruneMode::None;
  return std::nullopt;
}

void RunConfig::validate() const {
  if (!(delta > 0.0 && delta < 1.0)) throw PreconditionError("delta must lie in (0, 1)");
  if (resample_target < 1) throw PreconditionError("resample target must be positive");
  if (folds < 2) throw PreconditionError("need at least 2 folds");
  if (max_rules < 1) throw PreconditionError("max rules must be positive");
  if (max_literals < 1) throw PreconditionError("max literals must be positive");
}

std::uint64_t RunConfig::tie_seed() const { return derive_seed(seed, kTieStream); }

nlohmann::json to_json(const RunConfig& config) {
  return {{"mode", mode_name(config.mode)},     {"delta", config.delta},
          {"resample", config.resample_target}, {"seed", config.seed},
          {"folds", config.folds},              {"max_rules", config.max_rules},
          {"max_literals", config.max_literals}};
}

TrainResult train_detailed(const Sample& sample, const RunConfig& config) {
  config.validate();
  if (sample.empty()) throw PreconditionError("cannot train on an empty sample");
  TrainResult result;
  GrowerOptions grow;
  grow.max_rules = config.max_rules;
  grow.max_literals = config.max_literals;
  grow.parallel = config.parallel;
  result.growth = grow_committee(sample, grow);

  DecisionCommittee dc(sample.n(), sample.c());
  for (auto& rule : assign_votes(sample, result.growth.monomials, config.parallel)) dc.add_rule(std::move(rule));
  dc.set_default(compute_default_vector(dc, sample));
  result.unpruned = dc;

  const std::uint64_t tie = config.tie_seed();
  switch (config.mode) {
    case PruneMode::None:
      result.committee = dc;
      break;
    case PruneMode::Pessimistic: {
      auto pruned = prune_pessimistic(dc, sample, tie, config.parallel);
      result.committee = std::move(pruned.committee);
      result.prune_trace = std::move(pruned.trace);
      break;
    }
    case PruneMode::Optimistic: {
      const PenaltyParams params{config.delta, config.resample_target, derive_seed(config.seed, kResampleStream)};
      result.committee = prune_optimistic(dc, sample, params, tie);
      break;
    }
  }
  result.committee.set_default(compute_default_vector(result.committee, sample));
  return result;
}

DecisionCommittee train(const Sample& sample, const RunConfig& config) {
  return train_detailed(sample, config).committee;
}

EvalReport cross_validate(const Sample& sample, const RunConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto folds = stratified_folds(sample, config.folds, derive_seed(config.seed, kFoldStream));
  EvalReport report;
  report.config = config;
  report.folds.resize(folds.size());
  run_indexed(folds.size(), config.parallel, [&](std::size_t f) {
    RunConfig fold_config = config;
    fold_config.seed = derive_seed(config.seed, f + 1);
    const Sample train_set = sample.subset(folds[f].train);
    const Sample test_set = sample.subset(folds[f].test);
    const auto dc = train(train_set, fold_config);
    const auto size = size_metrics(dc);
    report.folds[f] = {f,
                       train_set.size(),
                       test_set.size(),
                       100.0 * error_rate(dc, test_set, fold_config.tie_seed()),
                       static_cast<double>(size.rules),
                       static_cast<double>(size.literals)};
  });
  report.mean_error_pct = mean(report.folds, &FoldResult::error_pct);
  report.mean_rules = mean(report.folds, &FoldResult::rules);
  report.mean_literals = mean(report.folds, &FoldResult::literals);
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string noise_kind_name(NoiseKind kind) { return kind == NoiseKind::Class ? "class" : "attribute"; }

std::vector<SweepRow> noise_sweep(const RunConfig& config, const SweepOptions& options) {
  config.validate();
  if (options.steps < 1) throw PreconditionError("sweep needs at least one step");
  std::vector<SweepRow> rows;
  for (auto kind : options.kinds)
    for (std::size_t s = 0; s <= options.steps; ++s) {
      SweepRow row;
      row.kind = kind;
      row.level = options.max_level * static_cast<double>(s) / static_cast<double>(options.steps);
      rows.push_back(row);
    }
  const std::uint64_t gen_seed = derive_seed(config.seed, kSweepStream);
  run_indexed(rows.size(), config.parallel, [&](std::size_t i) {
    auto& row = rows[i];
    const double class_noise = row.kind == NoiseKind::Class ? row.level : 0.0;
    const double attr_noise = row.kind == NoiseKind::Attribute ? row.level : 0.0;
    const Sample sample = gen_xd6(options.examples, class_noise, attr_noise, gen_seed);
    const auto report = cross_validate(sample, config);
    row.mean_error_pct = report.mean_error_pct;
    row.mean_literals = report.mean_literals;
    row.mean_rules = report.mean_rules;
  });
  return rows;
}

void write_eval_csv(std::ostream& os, const EvalReport& report) {
  const auto precision = os.precision(12);
  os << "fold,train_size,test_size,error_pct,r_DC,l_DC\n";
  for (const auto& f : report.folds)
    os << f.fold << ',' << f.train_size << ',' << f.test_size << ',' << f.error_pct << ',' << f.rules << ','
       << f.literals << '\n';
  os << "mean,,," << report.mean_error_pct << ',' << report.mean_rules << ',' << report.mean_literals << '\n';
  os.precision(precision);
}

nlohmann::json to_json(const EvalReport& report, bool include_timing) {
  auto folds = nlohmann::json::array();
  for (const auto& f : report.folds)
    folds.push_back({{"fold", f.fold},
                     {"train_size", f.train_size},
                     {"test_size", f.test_size},
                     {"error_pct", f.error_pct},
                     {"r_DC", f.rules},
                     {"l_DC", f.literals}});
  nlohmann::json j{{"config", to_json(report.config)},
                   {"seed", report.config.seed},
                   {"folds", std::move(folds)},
                   {"mean", {{"error_pct", report.mean_error_pct}, {"r_DC", report.mean_rules}, {"l_DC", report.mean_literals}}}};
  if (include_timing) j["wall_seconds"] = report.wall_seconds;
  return j;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  const auto precision = os.precision(12);
  os << "noise_kind,level,mean_error_pct,mean_l_DC,mean_r_DC\n";
  for (const auto& r : rows)
    os << noise_kind_name(r.kind) << ',' << r.level << ',' << r.mean_error_pct << ',' << r.mean_literals << ','
       << r.mean_rules << '\n';
  os.precision(precision);
}

nlohmann::json sweep_to_json(const std::vector<SweepRow>& rows, const RunConfig& config) {
  auto arr = nlohmann::json::array();
  for (const auto& r : rows)
    arr.push_back({{"noise_kind", noise_kind_name(r.kind)},
                   {"level", r.level},
                   {"mean_error_pct", r.mean_error_pct},
                   {"mean_l_DC", r.mean_literals},
                   {"mean_r_DC", r.mean_rules}});
  return {{"config", to_json(config)}, {"rows", std::move(arr)}};
}

}  // namespace widc
