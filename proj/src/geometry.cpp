#include "gtree/geometry.hpp"

#include <algorithm>
#include <limits>

#include "gtree/error.hpp"

namespace gtree {

bool is_valid(const Rect& r) {
    return std::isfinite(r.center.x) && std::isfinite(r.center.y) && std::isfinite(r.half_width) &&
           std::isfinite(r.half_height) && r.half_width > 0.0 && r.half_height > 0.0;
}

bool overlaps(const Rect& a, const Rect& b, double eps) {
    return std::abs(a.center.x - b.center.x) < a.half_width + b.half_width - eps &&
           std::abs(a.center.y - b.center.y) < a.half_height + b.half_height - eps;
}

double rect_distance(const Rect& a, const Rect& b) {
    const double gx = std::max(0.0, std::abs(a.center.x - b.center.x) - (a.half_width + b.half_width));
    const double gy = std::max(0.0, std::abs(a.center.y - b.center.y) - (a.half_height + b.half_height));
    return std::hypot(gx, gy);
}

Rect moved_along(const Rect& a, const Rect& b, double t) {
    Rect moved = b;
    moved.center = a.center + t * (b.center - a.center);
    return moved;
}

double touching_parameter(const Rect& a, const Rect& b) {
    const double dx = std::abs(b.center.x - a.center.x);
    const double dy = std::abs(b.center.y - a.center.y);
    if (dx == 0.0 && dy == 0.0) {
        throw CoincidentCentersError();
    }
    constexpr double inf = std::numeric_limits<double>::infinity();
    const double tx = dx > 0.0 ? (a.half_width + b.half_width) / dx : inf;
    const double ty = dy > 0.0 ? (a.half_height + b.half_height) / dy : inf;
    double t = std::min(tx, ty);

    // Rounding in the translated center can leave an overlap of one ulp.
    for (int step = 0; step < 64 && overlaps(a, moved_along(a, b, t)); ++step) {
        t = std::nextafter(t, inf);
    }
    return t;
}

EdgeCost edge_cost(const Rect& a, const Rect& b) {
    if (!overlaps(a, b)) {
        return {rect_distance(a, b), 1.0};
    }
    const double t = touching_parameter(a, b);
    const double s = norm(b.center - a.center);
    return {-(t - 1.0) * s, t};
}

}  // namespace gtree
