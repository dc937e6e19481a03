#pragma once

#include <span>
#include <vector>

#include "gcalc/density.hpp"

namespace gcalc::detail {

/// Part (0-based, on the p-part partition) of every labelled vertex of g, -1
/// for unlabelled vertices. Each pin must also avoid the boundaries of every
/// partition listed in own_parts.
std::vector<int> pinned_parts(const Multigraph& g, const PinAssignment& pins, int p,
                              std::span<const int> own_parts);

}  // namespace gcalc::detail
