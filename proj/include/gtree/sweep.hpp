#pragma once

#include <vector>

#include "gtree/layout.hpp"
#include "gtree/triangulation.hpp"

namespace gtree {

/// All unordered node pairs whose rectangles overlap per overlaps(a, b, eps),
/// sorted. Plane sweep over x with a y-interval structure, so the cost is
/// O((n + k) log n) for k reported pairs.
std::vector<IndexPair> find_all_overlapping_pairs(const Layout& layout, double eps = 0.0);

}  // namespace gtree
