#include "gtree/layout.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "gtree/error.hpp"

namespace gtree {

std::vector<Point> Layout::centers() const {
    std::vector<Point> out;
    out.reserve(nodes.size());
    for (const Rect& r : nodes) out.push_back(r.center);
    return out;
}

Layout make_layout(std::vector<Rect> nodes) {
    Layout layout;
    layout.ids.reserve(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) layout.ids.push_back(std::to_string(i));
    layout.nodes = std::move(nodes);
    return layout;
}

void validate(const Layout& layout) {
    if (layout.ids.size() != layout.nodes.size()) {
        throw InvalidArgumentError("layout has " + std::to_string(layout.nodes.size()) + " nodes but " +
                                   std::to_string(layout.ids.size()) + " ids");
    }
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < layout.nodes.size(); ++i) {
        if (!is_valid(layout.nodes[i])) {
            throw InvalidArgumentError("node '" + layout.ids[i] + "' has an invalid rectangle");
        }
        if (!seen.insert(layout.ids[i]).second) {
            throw InvalidArgumentError("duplicate node id '" + layout.ids[i] + "'");
        }
    }
    for (const IndexPair& e : layout.graph_edges) {
        if (e.i >= layout.size() || e.j >= layout.size()) {
            throw IndexOutOfRangeError(std::max(e.i, e.j), layout.size());
        }
    }
}

Rect bounding_box(const Layout& layout) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    double min_x = inf, min_y = inf, max_x = -inf, max_y = -inf;
    for (const Rect& r : layout.nodes) {
        min_x = std::min(min_x, r.center.x - r.half_width);
        max_x = std::max(max_x, r.center.x + r.half_width);
        min_y = std::min(min_y, r.center.y - r.half_height);
        max_y = std::max(max_y, r.center.y + r.half_height);
    }
    if (layout.nodes.empty()) return Rect{{0.0, 0.0}, 0.0, 0.0};
    return Rect{{(min_x + max_x) / 2.0, (min_y + max_y) / 2.0}, (max_x - min_x) / 2.0, (max_y - min_y) / 2.0};
}

}  // namespace gtree
