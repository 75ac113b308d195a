#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "gtree/geometry.hpp"

namespace gtree {

/// Unordered node pair, stored with i < j.
struct IndexPair {
    std::size_t i = 0;
    std::size_t j = 0;

    static IndexPair of(std::size_t a, std::size_t b) { return a < b ? IndexPair{a, b} : IndexPair{b, a}; }

    friend auto operator<=>(const IndexPair&, const IndexPair&) = default;
};

/// Proximity edges over a node set: Delaunay edges, optionally augmented with
/// extra overlapping pairs. Edges are sorted and unique.
struct ProximityGraph {
    std::size_t node_count = 0;
    std::vector<IndexPair> edges;
    bool augmented = false;
};

/// Counter-clockwise triangle over input point indices.
struct Triangle {
    std::array<std::size_t, 3> v{};
};

struct Triangulation {
    std::vector<Triangle> triangles;
    ProximityGraph graph;
};

/// Delaunay triangulation of pairwise distinct points.
///
/// Collinear input yields no triangles and a path graph through the points in
/// their order along the line; two points yield a single edge. Cocircular
/// configurations are resolved deterministically by insertion order, so the
/// same input always produces the same edge set.
///
/// Throws TooFewPointsError for fewer than two points and DuplicatePointsError
/// when points repeat.
Triangulation triangulate(std::span<const Point> points);

/// Edge set of triangulate(points).
ProximityGraph delaunay(std::span<const Point> points);

/// Union of `graph` edges with `pairs`, deduplicated, and marked augmented.
ProximityGraph augment_with_overlaps(const ProximityGraph& graph, std::span<const IndexPair> pairs);

}  // namespace gtree
