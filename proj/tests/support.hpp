#pragma once

#include "theta/bounds.hpp"
#include "theta/geometry.hpp"
#include "theta/visibility.hpp"

#include <cmath>
#include <random>

namespace theta::testing {

struct Triple {
    Point u;
    Point v;
    Point w;
};

/// u at the origin, w uniformly inside C_0^u, v uniform in T_uw strictly
/// left of uw. Cone conditions of the individual lemmas are not enforced.
inline Triple sample_left_triple(std::mt19937_64& rng, const ConeSystem& cones)
{
    const double half = cones.theta() / 2;
    std::uniform_real_distribution<double> angle(-half * 0.999, half * 0.999);
    std::uniform_real_distribution<double> length(0.5, 2.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (;;) {
        const Point u{0.0, 0.0};
        const Point w = length(rng) * ConeSystem::direction(angle(rng));
        const CanonicalTriangle t = canonical_triangle_in_cone(u, w, 0, cones);
        double s = unit(rng);
        double r = unit(rng);
        if (s + r > 1) {
            s = 1 - s;
            r = 1 - r;
        }
        const Point v = u + s * (t.corner_ccw - u) + r * (t.corner_cw - u);
        if (orientation(u, w, v) == Orientation::CounterClockwise) {
            return {u, v, w};
        }
    }
}

inline std::vector<Point> rotated(const std::vector<Point>& pts, double radians)
{
    std::vector<Point> out;
    for (const Point p : pts) {
        out.push_back(rotate(p, radians));
    }
    return out;
}

} // namespace theta::testing
