#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "widc/committee.hpp"
#include "widc/grower.hpp"
#include "widc/prune.hpp"
#include "widc/sample.hpp"

namespace widc {

enum class PruneMode { Optimistic, Pessimistic, None };

/// "o", "p" or "none".
std::string mode_name(PruneMode mode);
std::optional<PruneMode> parse_mode(const std::string& name);

struct RunConfig {
  PruneMode mode = PruneMode::Pessimistic;
  double delta = 0.05;
  std::size_t resample_target = 5000;
  std::uint64_t seed = 1;
  std::size_t folds = 10;
  std::size_t max_rules = 256;
  std::size_t max_literals = 32;
  bool parallel = true;

  /// Throws PreconditionError on a value outside its domain.
  void validate() const;
  std::uint64_t tie_seed() const;
};

nlohmann::json to_json(const RunConfig& config);

struct TrainResult {
  DecisionCommittee committee;
  DecisionCommittee unpruned;  // after vote assignment, before pruning
  GrowResult growth;
  PruneTrace prune_trace;      // pessimistic mode only
};

/// Grow, assign votes, drop zero-vote rules, prune per mode, recompute the
/// default vector. Throws PreconditionError on an empty sample.
TrainResult train_detailed(const Sample& sample, const RunConfig& config);
DecisionCommittee train(const Sample& sample, const RunConfig& config);

struct FoldResult {
  std::size_t fold = 0;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  double error_pct = 0.0;
  double rules = 0.0;
  double literals = 0.0;
};

struct EvalReport {
  RunConfig config;
  std::vector<FoldResult> folds;
  double mean_error_pct = 0.0;
  double mean_rules = 0.0;
  double mean_literals = 0.0;
  double wall_seconds = 0.0;  // not part of the deterministic outputs
};

/// Stratified k-fold evaluation. Fold f trains with seed derive_seed(seed, f + 1);
/// folds may run concurrently without changing the report.
EvalReport cross_validate(const Sample& sample, const RunConfig& config);

enum class NoiseKind { Class, Attribute };
std::string noise_kind_name(NoiseKind kind);

struct SweepRow {
  NoiseKind kind = NoiseKind::Class;
  double level = 0.0;
  double mean_error_pct = 0.0;
  double mean_literals = 0.0;
  double mean_rules = 0.0;
};

struct SweepOptions {
  std::vector<NoiseKind> kinds{NoiseKind::Class, NoiseKind::Attribute};
  std::size_t examples = 512;
  std::size_t steps = 20;   // levels 0, max/steps, ..., max
  double max_level = 0.40;
};

/// One fresh XD6 sample per (kind, level), cross-validated with config. The
/// generator seed is shared by all levels so they differ only by noise.
std::vector<SweepRow> noise_sweep(const RunConfig& config, const SweepOptions& options = {});

void write_eval_csv(std::ostream& os, const EvalReport& report);
nlohmann::json to_json(const EvalReport& report, bool include_timing = false);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
nlohmann::json sweep_to_json(const std::vector<SweepRow>& rows, const RunConfig& config);

}  // namespace widc
