#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "widc/votes.hpp"

namespace widc {

struct SuiteReport {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  double max_deviation = 0.0;
  double seconds = 0.0;
  bool passed() const noexcept { return failures == 0; }
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::vector<std::string> suites;  // empty runs all
  TwoClassThresholds thresholds;    // replaced only to check that the suite notices
  double tolerance = 1e-9;
};

struct VerifyReport {
  std::vector<SuiteReport> suites;
  bool passed() const noexcept;
};

/// monotone-optimality, two-class-table, multilabel-bound, submodularity,
/// symmetric-minimization.
const std::vector<std::string>& verify_suite_names();

SuiteReport verify_monotone_optimality(std::uint64_t seed, std::size_t instances = 500, double tol = 1e-9);
SuiteReport verify_two_class_table(std::uint64_t seed, const TwoClassThresholds& thresholds = {},
                                   std::size_t points = 1000, double tol = 1e-9);
SuiteReport verify_multilabel_bound(std::uint64_t seed, std::size_t instances = 200);
SuiteReport verify_submodularity(std::uint64_t seed, std::size_t instances = 1000, double tol = 1e-9);
SuiteReport verify_symmetric_minimization(std::uint64_t seed, std::size_t instances = 100, double tol = 1e-9);

/// Throws PreconditionError on an unknown suite name.
VerifyReport run_verify(const VerifyOptions& options);

/// suite,cases,failures,max_deviation,seconds
void write_verify_csv(std::ostream& os, const VerifyReport& report, bool include_timing = false);
nlohmann::json to_json(const VerifyReport& report, bool include_timing = false);

}  // namespace widc
