#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "widc/committee.hpp"
#include "widc/sample.hpp"

namespace widc {

struct GrowerOptions {
  std::size_t max_rules = 256;
  std::size_t max_literals = 32;
  // Strict decrease means Z_new < Z_old - min_decrease.
  double min_decrease = 1e-12;
  bool parallel = true;
};

struct LiteralStep {
  std::size_t monomial_index = 0;
  Literal literal;
  double z = 0.0;
};

struct GrowResult {
  std::vector<Monomial> monomials;
  // z_trace[0] is Z with no monomial; z_trace[i] is Z after monomial i-1.
  std::vector<double> z_trace;
  std::vector<LiteralStep> steps;
};

/// Grows one monomial from the empty conjunction by repeatedly adding the
/// literal that minimizes Z over the partition induced by existing plus the
/// partial monomial, skipping literals whose result is already in existing.
/// Ties go to the lowest variable, positive before negative. Returns nullopt
/// when no literal strictly decreases Z.
///
/// z_reference, when given, is the Z of the partition induced by existing; it
/// is recomputed otherwise. steps receives one entry per accepted literal.
std::optional<Monomial> grow_monomial(const Sample& sample, std::span<const Monomial> existing,
                                      const GrowerOptions& options = {},
                                      std::optional<double> z_reference = std::nullopt,
                                      std::vector<LiteralStep>* steps = nullptr,
                                      double* z_out = nullptr);

/// Grows monomials until a new one fails to decrease Z or max_rules is
/// reached. Throws PreconditionError on an empty sample.
GrowResult grow_committee(const Sample& sample, const GrowerOptions& options = {});

/// CSV: monomial,literal,z, one line per accepted literal.
void write_grow_trace_csv(std::ostream& os, const GrowResult& result);

}  // namespace widc
