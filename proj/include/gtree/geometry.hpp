#pragma once

#include <cmath>

namespace gtree {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
    friend bool operator==(Point a, Point b) = default;
};

inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double squared_norm(Point p) { return p.x * p.x + p.y * p.y; }

/// Axis-aligned rectangle given by its center and positive half extents.
struct Rect {
    Point center;
    double half_width = 0.5;
    double half_height = 0.5;

    friend bool operator==(const Rect&, const Rect&) = default;
};

/// Finite center and strictly positive finite half extents.
bool is_valid(const Rect& r);

/// True iff the open interiors overlap by more than `eps` along both axes.
/// Rectangles that merely touch do not overlap.
bool overlaps(const Rect& a, const Rect& b, double eps = 0.0);

/// Euclidean distance between the closest points of two rectangles, zero when
/// they touch or overlap.
double rect_distance(const Rect& a, const Rect& b);

/// Smallest factor t such that `b` moved to a.center + t * (b.center - a.center)
/// touches `a`. The result is rounded up so that the moved rectangle does not
/// overlap `a` when evaluated in floating point.
///
/// Throws CoincidentCentersError when both centers are equal.
double touching_parameter(const Rect& a, const Rect& b);

/// `b` translated along the center line of `a` and `b` by factor t.
Rect moved_along(const Rect& a, const Rect& b, double t);

struct EdgeCost {
    double cost = 0.0;  // negative for overlapping pairs
    double t = 1.0;     // touching parameter, 1 for non-overlapping pairs
};

/// Cost of a proximity edge: the rectangle gap for disjoint pairs, and
/// -(t - 1) * |b.center - a.center| for overlapping ones.
EdgeCost edge_cost(const Rect& a, const Rect& b);

}  // namespace gtree
