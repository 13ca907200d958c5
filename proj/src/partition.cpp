#include "widc/partition.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "widc/error.hpp"

namespace widc {

namespace {

constexpr double kNegativeSlack = 1e-9;

GroupTally tally_of(const Sample& sample, std::span<const std::size_t> members) {
  GroupTally t(sample.c());
  for (auto i : members) t.add(sample[i]);
  return t;
}

}  // namespace

void GroupTally::add(const Example& e, double sign) {
  const double w = sign * e.weight;
  total += w;
  for (std::size_t l = 0; l < per_class.size(); ++l) {
    if (e.classes.test(l))
      per_class[l] += w;
    else
      absent[l] += w;
  }
}

void GroupTally::clear() {
  total = 0.0;
  std::fill(per_class.begin(), per_class.end(), 0.0);
  std::fill(absent.begin(), absent.end(), 0.0);
}

void GroupTally::assign_difference(const GroupTally& whole, const GroupTally& part) {
  total = whole.total - part.total;
  for (std::size_t l = 0; l < per_class.size(); ++l) {
    per_class[l] = whole.per_class[l] - part.per_class[l];
    absent[l] = whole.absent[l] - part.absent[l];
  }
}

double cell_z(const GroupTally& tally) {
  double z = 0.0;
  for (std::size_t l = 0; l < tally.per_class.size(); ++l) {
    double positive = tally.per_class[l];
    double negative = tally.absent[l];
    if (positive < -kNegativeSlack || negative < -kNegativeSlack)
      throw InternalError("negative class tally in partition cell");
    positive = std::max(positive, 0.0);
    negative = std::max(negative, 0.0);
    z += std::sqrt(positive * negative);
  }
  return z;
}

double partition_z(std::span<const GroupTally> tallies) {
  double z = 0.0;
  for (const auto& t : tallies) z += cell_z(t);
  return 2.0 * z;
}

PartitionState::PartitionState(const Sample& sample, std::vector<Monomial> monomials)
    : sample_(&sample), monomials_(std::move(monomials)) {
  for (const auto& m : monomials_)
    if (m.variable_count() != sample.n()) throw DimensionError("monomial variable count differs from sample n");
  signatures_.reserve(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    BitVector sig(monomials_.size());
    for (std::size_t k = 0; k < monomials_.size(); ++k)
      if (monomials_[k].satisfied_by_unchecked(sample[i].observation)) sig.set(k);
    cells_[sig].members.push_back(i);
    signatures_.push_back(std::move(sig));
  }
  for (auto& [sig, cell] : cells_) cell.tally = tally_of(sample, cell.members);
}

std::vector<GroupTally> PartitionState::tallies() const {
  std::vector<GroupTally> out;
  out.reserve(cells_.size());
  for (const auto& [sig, cell] : cells_) out.push_back(cell.tally);
  return out;
}

double PartitionState::z() const {
  double z = 0.0;
  for (const auto& [sig, cell] : cells_) z += cell_z(cell.tally);
  return 2.0 * z;
}

void PartitionState::move_example(std::size_t example, const BitVector& from, const BitVector& to) {
  auto it = cells_.find(from);
  auto& members = it->second.members;
  members.erase(std::lower_bound(members.begin(), members.end(), example));
  if (members.empty()) cells_.erase(it);
  auto& dest = cells_[to].members;
  dest.insert(std::lower_bound(dest.begin(), dest.end(), example), example);
}

PartitionState PartitionState::refine(std::size_t monomial_index, Literal literal) const {
  if (monomial_index >= monomials_.size()) throw PreconditionError("monomial index out of range");
  PartitionState next = *this;
  next.monomials_[monomial_index].add(literal);

  std::set<BitVector> touched;
  for (std::size_t i = 0; i < signatures_.size(); ++i) {
    if (!signatures_[i].test(monomial_index)) continue;
    if (literal.holds(sample()[i].observation)) continue;
    BitVector to = signatures_[i];
    to.set(monomial_index, false);
    next.move_example(i, signatures_[i], to);
    touched.insert(signatures_[i]);
    touched.insert(to);
    next.signatures_[i] = std::move(to);
  }
  // Touched tallies are recomputed in member order, matching a rebuild exactly.
  for (const auto& sig : touched) {
    auto it = next.cells_.find(sig);
    if (it != next.cells_.end()) it->second.tally = tally_of(sample(), it->second.members);
  }
  return next;
}

PartitionState PartitionState::with_monomial(Monomial monomial) const {
  if (monomial.variable_count() != sample().n()) throw DimensionError("monomial variable count differs from sample n");
  PartitionState next;
  next.sample_ = sample_;
  next.monomials_ = monomials_;
  next.signatures_ = signatures_;
  for (std::size_t i = 0; i < next.signatures_.size(); ++i) {
    next.signatures_[i].push_back(monomial.satisfied_by_unchecked(sample()[i].observation));
    next.cells_[next.signatures_[i]].members.push_back(i);
  }
  next.monomials_.push_back(std::move(monomial));
  for (auto& [sig, cell] : next.cells_) cell.tally = tally_of(sample(), cell.members);
  return next;
}

bool PartitionState::equivalent(const PartitionState& other, double tol) const {
  if (monomials_ != other.monomials_ || signatures_ != other.signatures_) return false;
  if (cells_.size() != other.cells_.size()) return false;
  auto a = cells_.begin();
  auto b = other.cells_.begin();
  for (; a != cells_.end(); ++a, ++b) {
    if (a->first != b->first || a->second.members != b->second.members) return false;
    const auto& ta = a->second.tally;
    const auto& tb = b->second.tally;
    if (std::abs(ta.total - tb.total) > tol) return false;
    for (std::size_t l = 0; l < ta.per_class.size(); ++l)
      if (std::abs(ta.per_class[l] - tb.per_class[l]) > tol || std::abs(ta.absent[l] - tb.absent[l]) > tol)
        return false;
  }
  return true;
}

double partition_z(const PartitionState& state) { return state.z(); }

PartitionState refine_with_literal(const PartitionState& state, std::size_t monomial_index, Literal literal) {
  return state.refine(monomial_index, literal);
}

}  // namespace widc
