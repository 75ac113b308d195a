#pragma once

#include "gtree/geometry.hpp"

namespace gtree::predicates {

/// Sign of the orientation determinant: +1 if a, b, c turn counter-clockwise,
/// -1 if clockwise, 0 if collinear. Exact for all finite inputs.
int orient2d(Point a, Point b, Point c);

/// +1 if d lies strictly inside the circle through a, b, c (given in
/// counter-clockwise order), -1 if strictly outside, 0 if cocircular.
/// Exact for all finite inputs.
int incircle(Point a, Point b, Point c, Point d);

}  // namespace gtree::predicates
