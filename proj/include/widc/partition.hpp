#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "widc/committee.hpp"
#include "widc/sample.hpp"

namespace widc {

/// Class-weight tally of one partition cell. per_class[l] sums the weight of
/// members carrying class bit l and absent[l] the weight of the others. Both
/// are kept so that a pure cell has an exactly zero factor.
struct GroupTally {
  double total = 0.0;
  std::vector<double> per_class;
  std::vector<double> absent;

  explicit GroupTally(std::size_t c = 0) : per_class(c, 0.0), absent(c, 0.0) {}
  void add(const Example& e, double sign = 1.0);
  void clear();
  /// *this = whole - part, componentwise.
  void assign_difference(const GroupTally& whole, const GroupTally& part);
};

/// Sum over classes of sqrt(per_class * absent) for one cell. Throws InternalError on a
/// tally that is negative beyond rounding.
double cell_z(const GroupTally& tally);

/// Z = 2 * sum over cells and classes of sqrt(W+ * W-).
double partition_z(std::span<const GroupTally> tallies);

/// Partition of a sample by monomial-satisfaction signature: bit i of an
/// example's signature is set iff it satisfies monomial i, and two examples
/// share a cell iff their signatures are equal.
///
/// The state keeps a pointer to the sample, which must outlive it.
class PartitionState {
 public:
  struct Cell {
    std::vector<std::size_t> members;  // ascending
    GroupTally tally;
  };

  /// Builds the partition from scratch.
  PartitionState(const Sample& sample, std::vector<Monomial> monomials);

  const Sample& sample() const noexcept { return *sample_; }
  std::span<const Monomial> monomials() const noexcept { return monomials_; }
  const BitVector& signature(std::size_t example) const { return signatures_.at(example); }
  const std::map<BitVector, Cell>& cells() const noexcept { return cells_; }
  std::size_t cell_count() const noexcept { return cells_.size(); }
  std::vector<GroupTally> tallies() const;

  double z() const;

  /// Specializes monomial monomial_index by literal, updating only the examples
  /// that stop satisfying it. Throws PreconditionError when the literal's
  /// variable already appears in that monomial.
  PartitionState refine(std::size_t monomial_index, Literal literal) const;

  /// Appends a monomial, splitting every cell by satisfaction of it.
  PartitionState with_monomial(Monomial monomial) const;

  /// Same signatures, same cells with the same members, tallies within tol.
  bool equivalent(const PartitionState& other, double tol = 1e-12) const;

 private:
  PartitionState() = default;
  void move_example(std::size_t example, const BitVector& from, const BitVector& to);

  const Sample* sample_ = nullptr;
  std::vector<Monomial> monomials_;
  std::vector<BitVector> signatures_;
  std::map<BitVector, Cell> cells_;
};

double partition_z(const PartitionState& state);
PartitionState refine_with_literal(const PartitionState& state, std::size_t monomial_index, Literal literal);

}  // namespace widc
