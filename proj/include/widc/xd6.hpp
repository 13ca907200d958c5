#pragma once

#include <cstddef>
#include <cstdint>

#include "widc/sample.hpp"

namespace widc {

inline constexpr std::size_t kXd6Variables = 10;

/// (x0 & x1 & x2) | (x3 & x4 & x5) | (x6 & x7 & x8); x9 plays no role.
bool xd6_target(const Observation& o);

/// n_examples uniform 10-bit observations labelled by xd6_target (class 1 =
/// positive). Each label flips with probability class_noise; afterwards each
/// attribute bit flips independently with probability attr_noise. Uniform
/// weights. Identical output for identical arguments.
Sample gen_xd6(std::size_t n_examples, double class_noise, double attr_noise, std::uint64_t seed);

}  // namespace widc
