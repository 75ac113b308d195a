#include "gtree/spanning_tree.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

#include "gtree/error.hpp"

namespace gtree {

std::vector<std::size_t> RootedTree::preorder() const {
    std::vector<std::size_t> order;
    order.reserve(size());
    std::vector<std::size_t> stack{root};
    while (!stack.empty()) {
        const std::size_t node = stack.back();
        stack.pop_back();
        order.push_back(node);
        for (auto it = children[node].rbegin(); it != children[node].rend(); ++it) stack.push_back(*it);
    }
    return order;
}

std::vector<IndexPair> RootedTree::edges() const {
    std::vector<IndexPair> out;
    out.reserve(size());
    for (std::size_t v = 0; v < size(); ++v) {
        if (parent[v] != kNoParent) out.push_back(IndexPair::of(v, parent[v]));
    }
    std::sort(out.begin(), out.end());
    return out;
}

double RootedTree::total_cost() const {
    double sum = 0.0;
    for (std::size_t v = 0; v < size(); ++v) {
        if (parent[v] != kNoParent) sum += edge_cost[v];
    }
    return sum;
}

std::vector<CostedEdge> cost_edges(const Layout& layout, const ProximityGraph& graph) {
    std::vector<CostedEdge> out;
    out.reserve(graph.edges.size());
    for (const IndexPair& e : graph.edges) {
        if (e.i >= layout.size()) throw IndexOutOfRangeError(e.i, layout.size());
        if (e.j >= layout.size()) throw IndexOutOfRangeError(e.j, layout.size());
        const EdgeCost c = edge_cost(layout.nodes[e.i], layout.nodes[e.j]);
        out.push_back({e.i, e.j, c.cost, c.t});
    }
    return out;
}

RootedTree minimum_spanning_tree(std::size_t node_count, std::span<const CostedEdge> edges, std::size_t root) {
    if (root >= node_count) throw IndexOutOfRangeError(root, node_count);

    // Compressed adjacency: for each node, the indices of incident edges.
    std::vector<std::size_t> offset(node_count + 1, 0);
    for (const CostedEdge& e : edges) {
        if (e.i >= node_count) throw IndexOutOfRangeError(e.i, node_count);
        if (e.j >= node_count) throw IndexOutOfRangeError(e.j, node_count);
        ++offset[e.i + 1];
        ++offset[e.j + 1];
    }
    for (std::size_t v = 0; v < node_count; ++v) offset[v + 1] += offset[v];
    std::vector<std::size_t> incident(offset.back());
    {
        std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
        for (std::size_t k = 0; k < edges.size(); ++k) {
            incident[fill[edges[k].i]++] = k;
            incident[fill[edges[k].j]++] = k;
        }
    }

    RootedTree tree;
    tree.root = root;
    tree.parent.assign(node_count, kNoParent);
    tree.children.assign(node_count, {});
    tree.edge_t.assign(node_count, 1.0);
    tree.edge_cost.assign(node_count, 0.0);

    // (cost, min index, max index, edge, target)
    using Entry = std::tuple<double, std::size_t, std::size_t, std::size_t, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    std::vector<bool> in_tree(node_count, false);

    auto add_node = [&](std::size_t v) {
        in_tree[v] = true;
        for (std::size_t p = offset[v]; p < offset[v + 1]; ++p) {
            const std::size_t k = incident[p];
            const CostedEdge& e = edges[k];
            const std::size_t other = e.i == v ? e.j : e.i;
            if (!in_tree[other]) heap.emplace(e.cost, std::min(e.i, e.j), std::max(e.i, e.j), k, other);
        }
    };

    add_node(root);
    std::size_t reached = 1;
    while (!heap.empty() && reached < node_count) {
        const auto [cost, lo, hi, k, target] = heap.top();
        heap.pop();
        if (in_tree[target]) continue;
        const CostedEdge& e = edges[k];
        const std::size_t from = e.i == target ? e.j : e.i;
        tree.parent[target] = from;
        tree.children[from].push_back(target);
        tree.edge_t[target] = e.t;
        tree.edge_cost[target] = e.cost;
        ++reached;
        add_node(target);
    }
    if (reached < node_count) {
        const auto it = std::find(in_tree.begin(), in_tree.end(), false);
        throw DisconnectedGraphError(static_cast<std::size_t>(it - in_tree.begin()));
    }
    return tree;
}

RootedTree reroot(const RootedTree& tree, std::size_t new_root) {
    const std::size_t n = tree.size();
    if (new_root >= n) throw IndexOutOfRangeError(new_root, n);

    struct Link {
        std::size_t to;
        double t;
        double cost;
    };
    std::vector<std::vector<Link>> adjacency(n);
    for (std::size_t v = 0; v < n; ++v) {
        const std::size_t p = tree.parent[v];
        if (p == kNoParent) continue;
        adjacency[v].push_back({p, tree.edge_t[v], tree.edge_cost[v]});
        adjacency[p].push_back({v, tree.edge_t[v], tree.edge_cost[v]});
    }

    RootedTree out;
    out.root = new_root;
    out.parent.assign(n, kNoParent);
    out.children.assign(n, {});
    out.edge_t.assign(n, 1.0);
    out.edge_cost.assign(n, 0.0);
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{new_root};
    seen[new_root] = true;
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        for (const Link& l : adjacency[v]) {
            if (seen[l.to]) continue;
            seen[l.to] = true;
            out.parent[l.to] = v;
            out.children[v].push_back(l.to);
            out.edge_t[l.to] = l.t;
            out.edge_cost[l.to] = l.cost;
            stack.push_back(l.to);
        }
    }
    return out;
}

std::size_t central_root(const Layout& layout) {
    if (layout.nodes.empty()) throw InvalidArgumentError("empty layout has no root");
    const Point c = bounding_box(layout).center;
    std::size_t best = 0;
    double best_d = squared_norm(layout.nodes[0].center - c);
    for (std::size_t i = 1; i < layout.size(); ++i) {
        const double d = squared_norm(layout.nodes[i].center - c);
        if (d < best_d) {
            best = i;
            best_d = d;
        }
    }
    return best;
}

}  // namespace gtree
