// Command-line entry point: train, predict, cv, noise-sweep, gen-xd6, verify.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "widc/dataset.hpp"
#include "widc/error.hpp"
#include "widc/model_io.hpp"
#include "widc/pipeline.hpp"
#include "widc/verify.hpp"
#include "widc/xd6.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitVerify = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  std::string mode = "p";
  double delta = 0.05;
  std::size_t resample = 5000;
  std::uint64_t seed = 1;
  std::size_t folds = 10;
  std::size_t max_rules = 256;
  std::size_t max_literals = 32;
  bool serial = false;
  std::string schema;
  std::string out;
  std::string summary;
  bool timing = false;

  widc::RunConfig config() const {
    widc::RunConfig c;
    const auto m = widc::parse_mode(mode);
    if (!m) throw UsageError("--mode must be o, p or none");
    c.mode = *m;
    c.delta = delta;
    c.resample_target = resample;
    c.seed = seed;
    c.folds = folds;
    c.max_rules = max_rules;
    c.max_literals = max_literals;
    c.parallel = !serial;
    try {
      c.validate();
    } catch (const widc::PreconditionError& e) {
      throw UsageError(e.what());
    }
    return c;
  }
};

void add_run_flags(CLI::App* app, CommonFlags& f, bool with_folds) {
  app->add_option("--mode", f.mode, "Pruning: o (optimistic), p (pessimistic) or none")
      ->check(CLI::IsMember({"o", "p", "none"}));
  app->add_option("--delta", f.delta, "Confidence parameter of the optimistic penalty");
  app->add_option("--resample", f.resample, "Resample target for optimistic pruning");
  app->add_option("--seed", f.seed, "Random seed");
  if (with_folds) app->add_option("--folds", f.folds, "Cross-validation folds");
  app->add_option("--max-rules", f.max_rules, "Cap on grown rules");
  app->add_option("--max-literals", f.max_literals, "Cap on literals per rule");
  app->add_flag("--serial", f.serial, "Disable OpenMP kernels");
}

std::string summary_path(const CommonFlags& f) {
  if (!f.summary.empty()) return f.summary;
  if (f.out.empty()) return {};
  const auto dot = f.out.find_last_of('.');
  const auto slash = f.out.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return f.out + ".json";
  return f.out.substr(0, dot) + ".json";
}

// Writes to path, or to stdout when path is empty.
template <typename Writer>
void emit(const std::string& path, Writer writer) {
  if (path.empty() || path == "-") {
    writer(std::cout);
    return;
  }
  std::ofstream os(path);
  if (!os) throw widc::DataError("cannot write '" + path + "'");
  writer(os);
}

void emit_json(const std::string& path, const nlohmann::json& j) {
  emit(path, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

void print_warnings(const widc::LoadedDataset& data) {
  for (const auto& w : data.warnings) std::cerr << "warning: " << w << '\n';
}

int run_train(const std::string& data_path, const CommonFlags& f, const std::string& grow_trace,
              const std::string& prune_trace) {
  const auto config = f.config();
  const auto data = widc::load_csv_auto(data_path, f.schema);
  print_warnings(data);
  auto result = widc::train_detailed(data.sample, config);
  auto& dc = result.committee;
  dc.set_class_names(data.class_names);
  dc.set_variable_names(data.map.names());

  nlohmann::json model = widc::to_json(dc);
  model["binarization"] = widc::to_json(data.map);
  emit_json(f.out, model);

  if (!grow_trace.empty())
    emit(grow_trace, [&](std::ostream& os) { widc::write_grow_trace_csv(os, result.growth); });
  if (!prune_trace.empty())
    emit(prune_trace, [&](std::ostream& os) { widc::write_prune_trace_csv(os, result.prune_trace); });

  const auto size = widc::size_metrics(dc);
  const auto unpruned = widc::size_metrics(result.unpruned);
  nlohmann::json summary{
      {"config", widc::to_json(config)},
      {"examples", data.sample.size()},
      {"variables", data.sample.n()},
      {"classes", data.sample.c()},
      {"dropped_rows", data.dropped_rows},
      {"grown_rules", result.growth.monomials.size()},
      {"unpruned", {{"r_DC", unpruned.rules}, {"l_DC", unpruned.literals},
                    {"train_error_pct", 100.0 * widc::error_rate(result.unpruned, data.sample, config.tie_seed())}}},
      {"r_DC", size.rules},
      {"l_DC", size.literals},
      {"train_error_pct", 100.0 * widc::error_rate(dc, data.sample, config.tie_seed())}};
  const auto path = f.summary;
  if (!path.empty() || !f.out.empty()) emit_json(path.empty() ? "-" : path, summary);
  return kExitOk;
}

widc::BinarizationMap map_for_model(const nlohmann::json& model, const widc::DecisionCommittee& dc) {
  if (model.contains("binarization")) {
    auto map = widc::binarization_from_json(model["binarization"]);
    if (map.size() != dc.n()) throw widc::DataError("binarization size differs from model n");
    return map;
  }
  if (dc.variable_names().size() != dc.n()) throw widc::DataError("model has neither binarization nor variable names");
  widc::BinarizationMap map;
  for (const auto& name : dc.variable_names()) map.variables.push_back({name, name, 0, widc::ColumnKind::Boolean, {}, 0.0});
  return map;
}

int run_predict(const std::string& data_path, const std::string& model_path, const CommonFlags& f) {
  std::ifstream model_in(model_path);
  if (!model_in) throw widc::DataError("cannot open '" + model_path + "'");
  nlohmann::json model;
  try {
    model = nlohmann::json::parse(model_in);
  } catch (const nlohmann::json::exception& e) {
    throw widc::DataError(std::string("model is not valid JSON: ") + e.what());
  }
  const auto dc = widc::committee_from_json(model);
  const auto map = map_for_model(model, dc);
  std::ifstream data_in(data_path);
  if (!data_in) throw widc::DataError("cannot open '" + data_path + "'");
  const auto observations = widc::binarize_rows(data_in, map);
  const std::uint64_t tie = widc::RunConfig{.seed = f.seed}.tie_seed();
  emit(f.out, [&](std::ostream& os) {
    os << "row,prediction\n";
    for (std::size_t i = 0; i < observations.size(); ++i) {
      const auto k = widc::classify(dc, observations[i], tie);
      os << i << ',' << (k < dc.class_names().size() ? dc.class_names()[k] : std::to_string(k)) << '\n';
    }
  });
  return kExitOk;
}

int run_cv(const std::string& data_path, const CommonFlags& f) {
  const auto config = f.config();
  const auto data = widc::load_csv_auto(data_path, f.schema);
  print_warnings(data);
  if (config.folds > data.sample.size()) throw UsageError("--folds exceeds the number of examples");
  const auto report = widc::cross_validate(data.sample, config);
  emit(f.out, [&](std::ostream& os) { widc::write_eval_csv(os, report); });
  const auto json_path = summary_path(f);
  if (!json_path.empty()) emit_json(json_path, widc::to_json(report, f.timing));
  if (f.timing) std::cerr << "wall time: " << report.wall_seconds << " s\n";
  return kExitOk;
}

int run_sweep(const CommonFlags& f, const std::string& kind, std::size_t examples, std::size_t steps,
              double max_level) {
  const auto config = f.config();
  widc::SweepOptions options;
  options.examples = examples;
  options.steps = steps;
  options.max_level = max_level;
  if (kind == "class")
    options.kinds = {widc::NoiseKind::Class};
  else if (kind == "attribute")
    options.kinds = {widc::NoiseKind::Attribute};
  if (examples < config.folds) throw UsageError("--examples must be at least --folds");
  const auto rows = widc::noise_sweep(config, options);
  emit(f.out, [&](std::ostream& os) { widc::write_sweep_csv(os, rows); });
  const auto json_path = summary_path(f);
  if (!json_path.empty()) emit_json(json_path, widc::sweep_to_json(rows, config));
  return kExitOk;
}

int run_gen(const CommonFlags& f, std::size_t examples, double class_noise, double attr_noise) {
  if (examples == 0) throw UsageError("--examples must be positive");
  if (!(class_noise >= 0 && class_noise <= 1) || !(attr_noise >= 0 && attr_noise <= 1))
    throw UsageError("noise rates must lie in [0, 1]");
  const auto sample = widc::gen_xd6(examples, class_noise, attr_noise, f.seed);
  std::vector<std::string> names;
  for (std::size_t k = 0; k < widc::kXd6Variables; ++k) names.push_back("x" + std::to_string(k));
  emit(f.out, [&](std::ostream& os) { widc::write_sample_csv(os, sample, names, {"0", "1"}); });
  return kExitOk;
}

int run_verify_cmd(const CommonFlags& f, const std::vector<std::string>& suites, double perturb) {
  widc::VerifyOptions options;
  options.seed = f.seed;
  options.suites = suites;
  if (perturb != 1.0) options.thresholds.weak *= perturb;
  widc::VerifyReport report;
  try {
    report = widc::run_verify(options);
  } catch (const widc::PreconditionError& e) {
    throw UsageError(e.what());
  }
  emit(f.out, [&](std::ostream& os) { widc::write_verify_csv(os, report, f.timing); });
  const auto json_path = summary_path(f);
  if (!json_path.empty()) emit_json(json_path, widc::to_json(report, f.timing));
  return report.passed() ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision committee induction and oracle verification"};
  app.require_subcommand(1);
  CommonFlags f;
  std::string data_path, model_path, grow_trace, prune_trace, kind = "both";
  std::size_t examples = 512, steps = 20;
  double class_noise = 0.0, attr_noise = 0.0, max_level = 0.4, perturb = 1.0;
  std::vector<std::string> suites;

  auto* train = app.add_subcommand("train", "Grow, assign votes and prune a committee");
  train->add_option("data", data_path, "CSV file")->required();
  train->add_option("--schema", f.schema, "Column kind sidecar");
  train->add_option("--out", f.out, "Model JSON (default stdout)");
  train->add_option("--summary", f.summary, "Training summary JSON");
  train->add_option("--grow-trace", grow_trace, "CSV of accepted literals and Z");
  train->add_option("--prune-trace", prune_trace, "CSV of pessimistic removals");
  add_run_flags(train, f, false);

  auto* predict = app.add_subcommand("predict", "Classify a CSV with a saved model");
  predict->add_option("data", data_path, "CSV file with a header")->required();
  predict->add_option("--model", model_path, "Model JSON")->required();
  predict->add_option("--out", f.out, "Predictions CSV (default stdout)");
  predict->add_option("--seed", f.seed, "Seed used at training, for tie-breaking");

  auto* cv = app.add_subcommand("cv", "Stratified cross-validation");
  cv->add_option("data", data_path, "CSV file")->required();
  cv->add_option("--schema", f.schema, "Column kind sidecar");
  cv->add_option("--out", f.out, "Per-fold CSV (default stdout)");
  cv->add_option("--summary", f.summary, "JSON summary (default: --out with .json)");
  cv->add_flag("--timing", f.timing, "Add wall time to the JSON summary");
  add_run_flags(cv, f, true);

  auto* sweep = app.add_subcommand("noise-sweep", "Cross-validated XD6 runs over a noise grid");
  sweep->add_option("--kind", kind, "class, attribute or both")->check(CLI::IsMember({"class", "attribute", "both"}));
  sweep->add_option("--examples", examples, "Examples per generated sample");
  sweep->add_option("--steps", steps, "Grid intervals between 0 and --max-level")->check(CLI::PositiveNumber);
  sweep->add_option("--max-level", max_level, "Largest noise rate")->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--out", f.out, "Sweep CSV (default stdout)");
  sweep->add_option("--summary", f.summary, "JSON summary (default: --out with .json)");
  add_run_flags(sweep, f, true);

  auto* gen = app.add_subcommand("gen-xd6", "Write an XD6 sample as CSV");
  gen->add_option("--examples", examples, "Number of examples");
  gen->add_option("--class-noise", class_noise, "Label flip probability");
  gen->add_option("--attr-noise", attr_noise, "Per-bit flip probability");
  gen->add_option("--seed", f.seed, "Random seed");
  gen->add_option("--out", f.out, "CSV path (default stdout)");

  auto* verify = app.add_subcommand("verify", "Run the oracle suites");
  verify->add_option("--seed", f.seed, "Random seed");
  verify->add_option("--suite", suites, "Run only the named suite (repeatable)");
  verify->add_option("--perturb-two-class", perturb, "Scale one two-class threshold (suite self-test)");
  verify->add_option("--out", f.out, "Report CSV (default stdout)");
  verify->add_option("--summary", f.summary, "JSON summary (default: --out with .json)");
  verify->add_flag("--timing", f.timing, "Report seconds per suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train) return run_train(data_path, f, grow_trace, prune_trace);
    if (*predict) return run_predict(data_path, model_path, f);
    if (*cv) return run_cv(data_path, f);
    if (*sweep) return run_sweep(f, kind, examples, steps, max_level);
    if (*gen) return run_gen(f, examples, class_noise, attr_noise);
    if (*verify) return run_verify_cmd(f, suites, perturb);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
