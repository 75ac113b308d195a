#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "gtree/layout.hpp"
#include "gtree/triangulation.hpp"

namespace gtree {

/// Proximity edge with its cost and touching parameter (t > 1 iff the
/// endpoint rectangles overlap, in which case the cost is negative).
struct CostedEdge {
    std::size_t i = 0;
    std::size_t j = 0;
    double cost = 0.0;
    double t = 1.0;
};

inline constexpr std::size_t kNoParent = std::numeric_limits<std::size_t>::max();

/// Spanning tree in parent/children form. Per-node arrays describe the edge to
/// the node's parent; the root's entries are kNoParent, t = 1 and cost = 0.
struct RootedTree {
    std::size_t root = 0;
    std::vector<std::size_t> parent;
    std::vector<std::vector<std::size_t>> children;
    std::vector<double> edge_t;
    std::vector<double> edge_cost;

    std::size_t size() const noexcept { return parent.size(); }

    /// Nodes in depth-first preorder starting at the root; iterative, so trees
    /// as deep as the node count are fine.
    std::vector<std::size_t> preorder() const;

    /// Tree edges, sorted.
    std::vector<IndexPair> edges() const;
    double total_cost() const;
};

/// One CostedEdge per proximity edge, in graph order.
std::vector<CostedEdge> cost_edges(const Layout& layout, const ProximityGraph& graph);

/// Prim's algorithm with a binary heap. Ties between equal costs go to the
/// lexicographically smaller (min index, max index) pair.
///
/// Throws DisconnectedGraphError when some node cannot be reached from `root`.
RootedTree minimum_spanning_tree(std::size_t node_count, std::span<const CostedEdge> edges, std::size_t root);

/// Same undirected tree hanging from a different root.
RootedTree reroot(const RootedTree& tree, std::size_t new_root);

/// Node whose center is nearest the center of the layout's bounding box,
/// lowest index on ties.
std::size_t central_root(const Layout& layout);

}  // namespace gtree
