#pragma once

#include <cstdint>
#include <vector>

#include "widc/kernels.hpp"

namespace widc::kernels::detail {

// Per-call preparation shared by every candidate of a literal scan.
struct LiteralPrep {
  std::vector<std::uint32_t> touched;  // cells met by the cover, ascending
  std::vector<int> slot_of;            // cell -> index into touched, or -1
  double untouched_z = 0.0;            // sum of cell_z over the other cells
};

LiteralPrep prepare(const LiteralScoring& problem);

// in is scratch of size touched.size().
double score_one(const LiteralScoring& problem, const LiteralPrep& prep, const Literal& literal,
                 std::vector<GroupTally>& in);

double removal_error_one(const RemovalScoring& problem, std::size_t rule, std::vector<int>& scratch);

}  // namespace widc::kernels::detail
