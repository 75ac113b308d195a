#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gtree/geometry.hpp"
#include "gtree/triangulation.hpp"

namespace gtree {

/// Node rectangles with stable identifiers. Graph edges ride along for
/// rendering and metrics; overlap removal ignores them.
struct Layout {
    std::vector<Rect> nodes;
    std::vector<std::string> ids;
    std::vector<IndexPair> graph_edges;

    std::size_t size() const noexcept { return nodes.size(); }
    std::vector<Point> centers() const;
};

/// Layout whose ids are the decimal node indices.
Layout make_layout(std::vector<Rect> nodes);

/// Throws InvalidArgumentError on invalid rectangles, duplicate or missing
/// ids, or graph edges referring to absent nodes.
void validate(const Layout& layout);

/// Smallest axis-aligned box covering all rectangles, as a rectangle.
Rect bounding_box(const Layout& layout);

}  // namespace gtree
