#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "widc/bitvector.hpp"
#include "widc/sample.hpp"

namespace widc {

enum class Polarity : std::uint8_t { Positive, Negative };

struct Literal {
  std::size_t variable = 0;
  Polarity polarity = Polarity::Positive;

  friend bool operator==(const Literal&, const Literal&) = default;
  bool holds(const Observation& o) const { return o.test(variable) == (polarity == Polarity::Positive); }
  std::string to_string() const;
};

/// Conjunction of literals over n boolean variables, stored as a mask of
/// variables required true and a mask of variables required false. A variable
/// is never in both masks.
class Monomial {
 public:
  explicit Monomial(std::size_t n = 0) : positive_(n), negative_(n) {}
  static Monomial from_literals(std::size_t n, std::span<const Literal> literals);

  std::size_t variable_count() const noexcept { return positive_.size(); }
  std::size_t literal_count() const noexcept { return positive_.count() + negative_.count(); }
  bool empty() const noexcept { return positive_.none() && negative_.none(); }
  bool contains_variable(std::size_t v) const;
  std::optional<Polarity> polarity_of(std::size_t v) const;

  /// Throws PreconditionError if the variable is already constrained.
  void add(Literal literal);
  Monomial with(Literal literal) const;

  /// Throws DimensionError if the observation length differs from n.
  bool satisfied_by(const Observation& o) const;
  /// Same test without the length check, for inner loops.
  bool satisfied_by_unchecked(const Observation& o) const noexcept;

  const BitVector& positive() const noexcept { return positive_; }
  const BitVector& negative() const noexcept { return negative_; }
  std::vector<Literal> literals() const;
  std::string to_string(std::span<const std::string> names = {}) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  BitVector positive_;
  BitVector negative_;
};

bool satisfies(const Observation& observation, const Monomial& monomial);

/// Vote vector with components in {-1, 0, +1}.
class VoteVector {
 public:
  VoteVector() = default;
  explicit VoteVector(std::size_t c) : v_(c, 0) {}
  /// Throws PreconditionError on a component outside {-1, 0, +1}.
  VoteVector(std::initializer_list<int> values);
  explicit VoteVector(std::span<const int> values);

  std::size_t size() const noexcept { return v_.size(); }
  int operator[](std::size_t j) const noexcept { return v_[j]; }
  void set(std::size_t j, int value);
  bool is_zero() const noexcept;
  std::vector<int> values() const { return {v_.begin(), v_.end()}; }
  std::string to_string() const;

  friend bool operator==(const VoteVector&, const VoteVector&) = default;
  friend auto operator<=>(const VoteVector&, const VoteVector&) = default;

 private:
  std::vector<std::int8_t> v_;
};

/// Per-class tie-breaking weights in [0,1]^c.
class DefaultVector {
 public:
  DefaultVector() = default;
  explicit DefaultVector(std::vector<double> values);
  static DefaultVector uniform(std::size_t c);

  std::size_t size() const noexcept { return d_.size(); }
  double operator[](std::size_t j) const noexcept { return d_[j]; }
  std::span<const double> values() const noexcept { return d_; }

  friend bool operator==(const DefaultVector&, const DefaultVector&) = default;

 private:
  std::vector<double> d_;
};

struct Rule {
  Monomial monomial;
  VoteVector votes;

  friend bool operator==(const Rule&, const Rule&) = default;
};

struct SizeMetrics {
  std::size_t rules = 0;     // r_DC
  std::size_t literals = 0;  // l_DC
  friend bool operator==(const SizeMetrics&, const SizeMetrics&) = default;
};

/// Unordered rule set with distinct monomials plus a default vector.
class DecisionCommittee {
 public:
  DecisionCommittee() = default;
  DecisionCommittee(std::size_t n, std::size_t c);

  std::size_t n() const noexcept { return n_; }
  std::size_t c() const noexcept { return c_; }
  std::span<const Rule> rules() const noexcept { return rules_; }
  std::size_t size() const noexcept { return rules_.size(); }
  const DefaultVector& default_vector() const noexcept { return default_; }

  /// Throws DimensionError on mismatched n or c, PreconditionError on a
  /// monomial already present.
  void add_rule(Rule rule);
  void remove_rule(std::size_t index);
  void set_default(DefaultVector d);
  bool contains(const Monomial& m) const;

  std::span<const std::string> class_names() const noexcept { return class_names_; }
  void set_class_names(std::vector<std::string> names);
  std::span<const std::string> variable_names() const noexcept { return variable_names_; }
  void set_variable_names(std::vector<std::string> names);

  std::string to_string() const;

  friend bool operator==(const DecisionCommittee&, const DecisionCommittee&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t c_ = 0;
  std::vector<Rule> rules_;
  DefaultVector default_;
  std::vector<std::string> class_names_;
  std::vector<std::string> variable_names_;
};

/// Componentwise sum of the vote vectors of satisfied rules.
std::vector<int> vote(const DecisionCommittee& dc, const Observation& observation);

/// arg max of the vote; ties go to the largest default component among the tied
/// classes, and a remaining tie to a choice that is a pure function of
/// (tie_seed, observation).
std::size_t classify(const DecisionCommittee& dc, const Observation& observation,
                     std::uint64_t tie_seed);

/// Class decision from a precomputed vote total. obs_hash is Observation::hash().
std::size_t classify_totals(std::span<const int> totals, const DefaultVector& d,
                            std::uint64_t tie_seed, std::uint64_t obs_hash);

/// True iff the maximal component of totals is shared by two or more classes.
bool is_ambiguous(std::span<const int> totals);

/// Class distribution of ambiguously voted examples, or of the whole sample
/// when none is ambiguous. Throws PreconditionError on an empty sample.
DefaultVector compute_default_vector(const DecisionCommittee& dc, const Sample& sample);

/// Same computation from per-example vote totals laid out row-major (size x c).
DefaultVector default_from_totals(std::span<const int> totals, const Sample& sample);

SizeMetrics size_metrics(const DecisionCommittee& dc);

/// Weighted fraction of misclassified examples. A multilabel example counts as
/// correct when the predicted class bit is set.
double error_rate(const DecisionCommittee& dc, const Sample& sample, std::uint64_t tie_seed);

}  // namespace widc
