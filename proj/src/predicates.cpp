#include "gtree/predicates.hpp"

#include <gmpxx.h>

#include <cmath>
#include <limits>

namespace gtree::predicates {
namespace {

// Forward error bounds of the plain double evaluation (Shewchuk, stage A).
constexpr double kEpsilon = std::numeric_limits<double>::epsilon() / 2.0;
constexpr double kOrientBound = (3.0 + 16.0 * kEpsilon) * kEpsilon;
constexpr double kInCircleBound = (10.0 + 96.0 * kEpsilon) * kEpsilon;

int sign_of(const mpq_class& v) { return sgn(v); }

int orient2d_exact(Point a, Point b, Point c) {
    const mpq_class acx = mpq_class(a.x) - mpq_class(c.x);
    const mpq_class bcx = mpq_class(b.x) - mpq_class(c.x);
    const mpq_class acy = mpq_class(a.y) - mpq_class(c.y);
    const mpq_class bcy = mpq_class(b.y) - mpq_class(c.y);
    return sign_of(acx * bcy - acy * bcx);
}

int incircle_exact(Point a, Point b, Point c, Point d) {
    const mpq_class dx(d.x);
    const mpq_class dy(d.y);
    const mpq_class adx = mpq_class(a.x) - dx, ady = mpq_class(a.y) - dy;
    const mpq_class bdx = mpq_class(b.x) - dx, bdy = mpq_class(b.y) - dy;
    const mpq_class cdx = mpq_class(c.x) - dx, cdy = mpq_class(c.y) - dy;
    const mpq_class alift = adx * adx + ady * ady;
    const mpq_class blift = bdx * bdx + bdy * bdy;
    const mpq_class clift = cdx * cdx + cdy * cdy;
    const mpq_class det = alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
                          clift * (adx * bdy - bdx * ady);
    return sign_of(det);
}

}  // namespace

int orient2d(Point a, Point b, Point c) {
    const double detleft = (a.x - c.x) * (b.y - c.y);
    const double detright = (a.y - c.y) * (b.x - c.x);
    const double det = detleft - detright;
    const double detsum = std::abs(detleft) + std::abs(detright);
    if (std::abs(det) > kOrientBound * detsum) {
        return det > 0.0 ? 1 : -1;
    }
    return orient2d_exact(a, b, c);
}

int incircle(Point a, Point b, Point c, Point d) {
    const double adx = a.x - d.x, ady = a.y - d.y;
    const double bdx = b.x - d.x, bdy = b.y - d.y;
    const double cdx = c.x - d.x, cdy = c.y - d.y;

    const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
    const double cdxady = cdx * ady, adxcdy = adx * cdy;
    const double adxbdy = adx * bdy, bdxady = bdx * ady;
    const double alift = adx * adx + ady * ady;
    const double blift = bdx * bdx + bdy * bdy;
    const double clift = cdx * cdx + cdy * cdy;

    const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
    const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                             (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                             (std::abs(adxbdy) + std::abs(bdxady)) * clift;
    if (std::abs(det) > kInCircleBound * permanent) {
        return det > 0.0 ? 1 : -1;
    }
    return incircle_exact(a, b, c, d);
}

}  // namespace gtree::predicates
