#include "widc/committee.hpp"

#include <algorithm>
#include <sstream>

#include "widc/error.hpp"
#include "widc/random.hpp"

namespace widc {

std::string Literal::to_string() const {
  return (polarity == Polarity::Positive ? "x" : "!x") + std::to_string(variable);
}

Monomial Monomial::from_literals(std::size_t n, std::span<const Literal> literals) {
  Monomial m(n);
  for (const auto& l : literals) m.add(l);
  return m;
}

bool Monomial::contains_variable(std::size_t v) const {
  if (v >= variable_count()) throw DimensionError("variable index out of range");
  return positive_.test(v) || negative_.test(v);
}

std::optional<Polarity> Monomial::polarity_of(std::size_t v) const {
  if (v >= variable_count()) throw DimensionError("variable index out of range");
  if (positive_.test(v)) return Polarity::Positive;
  if (negative_.test(v)) return Polarity::Negative;
  return std::nullopt;
}

void Monomial::add(Literal literal) {
  if (contains_variable(literal.variable))
    throw PreconditionError("variable " + std::to_string(literal.variable) +
                            " already appears in the monomial");
  (literal.polarity == Polarity::Positive ? positive_ : negative_).set(literal.variable);
}

Monomial Monomial::with(Literal literal) const {
  Monomial m = *this;
  m.add(literal);
  return m;
}

bool Monomial::satisfied_by(const Observation& o) const {
  if (o.size() != variable_count())
    throw DimensionError("observation has " + std::to_string(o.size()) +
                         " variables, monomial expects " + std::to_string(variable_count()));
  return satisfied_by_unchecked(o);
}

bool Monomial::satisfied_by_unchecked(const Observation& o) const noexcept {
  const auto ow = o.words();
  const auto pw = positive_.words();
  const auto nw = negative_.words();
  for (std::size_t k = 0; k < ow.size(); ++k) {
    if ((ow[k] & pw[k]) != pw[k]) return false;
    if (ow[k] & nw[k]) return false;
  }
  return true;
}

std::vector<Literal> Monomial::literals() const {
  std::vector<Literal> out;
  for (std::size_t v = 0; v < variable_count(); ++v) {
    if (positive_.test(v)) out.push_back({v, Polarity::Positive});
    if (negative_.test(v)) out.push_back({v, Polarity::Negative});
  }
  return out;
}

std::string Monomial::to_string(std::span<const std::string> names) const {
  if (empty()) return "TRUE";
  std::string s;
  for (const auto& l : literals()) {
    if (!s.empty()) s += " & ";
    if (l.polarity == Polarity::Negative) s += "!";
    s += l.variable < names.size() ? names[l.variable] : "x" + std::to_string(l.variable);
  }
  return s;
}

bool satisfies(const Observation& observation, const Monomial& monomial) {
  return monomial.satisfied_by(observation);
}

VoteVector::VoteVector(std::initializer_list<int> values) {
  for (int x : values) {
    v_.push_back(0);
    set(v_.size() - 1, x);
  }
}

VoteVector::VoteVector(std::span<const int> values) : v_(values.size(), 0) {
  for (std::size_t j = 0; j < values.size(); ++j) set(j, values[j]);
}

void VoteVector::set(std::size_t j, int value) {
  if (value < -1 || value > 1) throw PreconditionError("vote components must be -1, 0 or +1");
  v_.at(j) = static_cast<std::int8_t>(value);
}

bool VoteVector::is_zero() const noexcept {
  return std::all_of(v_.begin(), v_.end(), [](std::int8_t x) { return x == 0; });
}

std::string VoteVector::to_string() const {
  std::string s = "(";
  for (std::size_t j = 0; j < v_.size(); ++j) {
    if (j) s += ",";
    s += v_[j] > 0 ? "+1" : (v_[j] < 0 ? "-1" : "0");
  }
  return s + ")";
}

DefaultVector::DefaultVector(std::vector<double> values) : d_(std::move(values)) {
  for (double x : d_)
    if (!(x >= 0.0 && x <= 1.0)) throw PreconditionError("default vector components must lie in [0,1]");
}

DefaultVector DefaultVector::uniform(std::size_t c) {
  return DefaultVector(std::vector<double>(c, c ? 1.0 / static_cast<double>(c) : 0.0));
}

DecisionCommittee::DecisionCommittee(std::size_t n, std::size_t c)
    : n_(n), c_(c), default_(DefaultVector::uniform(c)) {
  if (c < 1) throw PreconditionError("a committee needs at least one class");
}

void DecisionCommittee::add_rule(Rule rule) {
  if (rule.monomial.variable_count() != n_) throw DimensionError("monomial variable count differs from committee n");
  if (rule.votes.size() != c_) throw DimensionError("vote vector length differs from committee c");
  if (contains(rule.monomial)) throw PreconditionError("monomial already present in the committee");
  rules_.push_back(std::move(rule));
}

void DecisionCommittee::remove_rule(std::size_t index) {
  if (index >= rules_.size()) throw PreconditionError("rule index out of range");
  rules_.erase(rules_.begin() + static_cast<std::ptrdiff_t>(index));
}

void DecisionCommittee::set_default(DefaultVector d) {
  if (d.size() != c_) throw DimensionError("default vector length differs from committee c");
  default_ = std::move(d);
}

bool DecisionCommittee::contains(const Monomial& m) const {
  return std::any_of(rules_.begin(), rules_.end(), [&](const Rule& r) { return r.monomial == m; });
}

void DecisionCommittee::set_class_names(std::vector<std::string> names) {
  if (!names.empty() && names.size() != c_) throw DimensionError("class name count differs from c");
  class_names_ = std::move(names);
}

void DecisionCommittee::set_variable_names(std::vector<std::string> names) {
  if (!names.empty() && names.size() != n_) throw DimensionError("variable name count differs from n");
  variable_names_ = std::move(names);
}

std::string DecisionCommittee::to_string() const {
  std::ostringstream os;
  os << "rule";
  for (std::size_t j = 0; j < c_; ++j)
    os << '\t' << (j < class_names_.size() ? class_names_[j] : std::to_string(j));
  os << '\n';
  for (const auto& r : rules_) {
    os << r.monomial.to_string(variable_names_);
    for (std::size_t j = 0; j < c_; ++j) os << '\t' << r.votes[j];
    os << '\n';
  }
  os << "default";
  for (std::size_t j = 0; j < c_; ++j) os << '\t' << default_[j];
  os << '\n';
  return os.str();
}

std::vector<int> vote(const DecisionCommittee& dc, const Observation& observation) {
  if (observation.size() != dc.n())
    throw DimensionError("observation has " + std::to_string(observation.size()) +
                         " variables, committee expects " + std::to_string(dc.n()));
  std::vector<int> totals(dc.c(), 0);
  for (const auto& r : dc.rules())
    if (r.monomial.satisfied_by_unchecked(observation))
      for (std::size_t j = 0; j < dc.c(); ++j) totals[j] += r.votes[j];
  return totals;
}

bool is_ambiguous(std::span<const int> totals) {
  if (totals.empty()) return false;
  const int best = *std::max_element(totals.begin(), totals.end());
  return std::count(totals.begin(), totals.end(), best) > 1;
}

std::size_t classify_totals(std::span<const int> totals, const DefaultVector& d,
                            std::uint64_t tie_seed, std::uint64_t obs_hash) {
  const int best = *std::max_element(totals.begin(), totals.end());
  std::size_t tied[64];
  std::vector<std::size_t> tied_heap;
  std::size_t* ties = tied;
  if (totals.size() > 64) {
    tied_heap.resize(totals.size());
    ties = tied_heap.data();
  }
  std::size_t count = 0;
  for (std::size_t j = 0; j < totals.size(); ++j)
    if (totals[j] == best) ties[count++] = j;
  if (count == 1) return ties[0];

  if (d.size() == totals.size()) {
    double best_d = -1.0;
    for (std::size_t i = 0; i < count; ++i) best_d = std::max(best_d, d[ties[i]]);
    std::size_t kept = 0;
    for (std::size_t i = 0; i < count; ++i)
      if (d[ties[i]] == best_d) ties[kept++] = ties[i];
    count = kept;
    if (count == 1) return ties[0];
  }
  return ties[splitmix64(tie_seed ^ obs_hash) % count];
}

std::size_t classify(const DecisionCommittee& dc, const Observation& observation, std::uint64_t tie_seed) {
  const auto totals = vote(dc, observation);
  return classify_totals(totals, dc.default_vector(), tie_seed, observation.hash());
}

DefaultVector default_from_totals(std::span<const int> totals, const Sample& sample) {
  if (sample.empty()) throw PreconditionError("default vector needs a nonempty sample");
  const std::size_t c = sample.c();
  std::vector<double> d(c, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (!is_ambiguous(totals.subspan(i * c, c))) continue;
    const Example& e = sample[i];
    const double share = e.weight / static_cast<double>(e.label_count());
    for (std::size_t j = 0; j < c; ++j)
      if (e.classes.test(j)) d[j] += share;
    total += e.weight;
  }
  if (total <= 0.0) return DefaultVector(sample.class_distribution());
  for (auto& x : d) x = std::min(1.0, x / total);
  return DefaultVector(std::move(d));
}

DefaultVector compute_default_vector(const DecisionCommittee& dc, const Sample& sample) {
  if (sample.empty()) throw PreconditionError("default vector needs a nonempty sample");
  std::vector<int> totals;
  totals.reserve(sample.size() * dc.c());
  for (const auto& e : sample) {
    const auto v = vote(dc, e.observation);
    totals.insert(totals.end(), v.begin(), v.end());
  }
  return default_from_totals(totals, sample);
}

SizeMetrics size_metrics(const DecisionCommittee& dc) {
  SizeMetrics m;
  m.rules = dc.size();
  for (const auto& r : dc.rules()) m.literals += r.monomial.literal_count();
  return m;
}

double error_rate(const DecisionCommittee& dc, const Sample& sample, std::uint64_t tie_seed) {
  if (sample.empty()) throw PreconditionError("error rate needs a nonempty sample");
  double wrong = 0.0;
  double total = 0.0;
  for (const auto& e : sample) {
    const std::size_t predicted = classify(dc, e.observation, tie_seed);
    if (!e.classes.test(predicted)) wrong += e.weight;
    total += e.weight;
  }
  return wrong / total;
}

}  // namespace widc
