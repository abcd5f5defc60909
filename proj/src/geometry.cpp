#include "theta/geometry.hpp"

#include "theta/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace theta {

double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
double norm(Point a) { return std::hypot(a.x, a.y); }
double distance(Point a, Point b) { return norm(b - a); }

Point rotate(Point p, double radians, Point center)
{
    const Point d = p - center;
    const double c = std::cos(radians);
    const double s = std::sin(radians);
    return center + Point{d.x * c - d.y * s, d.x * s + d.y * c};
}

Orientation orientation(Point p, Point q, Point r, double eps)
{
    const double area2 = cross(q - p, r - p);
    if (std::abs(area2) < eps) {
        return Orientation::Collinear;
    }
    return area2 > 0 ? Orientation::CounterClockwise : Orientation::Clockwise;
}

bool proper_intersection(Point p1, Point q1, Point p2, Point q2, double eps)
{
    const Orientation o1 = orientation(p1, q1, p2, eps);
    const Orientation o2 = orientation(p1, q1, q2, eps);
    const Orientation o3 = orientation(p2, q2, p1, eps);
    const Orientation o4 = orientation(p2, q2, q1, eps);
    if (o1 == Orientation::Collinear || o2 == Orientation::Collinear ||
        o3 == Orientation::Collinear || o4 == Orientation::Collinear) {
        return false;
    }
    return o1 != o2 && o3 != o4;
}

ConeSystem::ConeSystem(int m)
    : m_(m)
{
    if (m < 6) {
        throw UnsupportedConeCount("cone count " + std::to_string(m) +
                                   " is below the supported minimum of 6");
    }
    k_ = (m - 2) / 4;
    x_ = m - 4 * k_;
    theta_ = 2.0 * std::numbers::pi / m;
}

Point ConeSystem::direction(double angle) { return {std::sin(angle), std::cos(angle)}; }

Point ConeSystem::bisector(int cone) const { return direction(normalize(cone) * theta_); }

Point ConeSystem::boundary_ccw(int cone) const
{
    return direction((normalize(cone) - 0.5) * theta_);
}

Point ConeSystem::boundary_cw(int cone) const
{
    return direction((normalize(cone) + 0.5) * theta_);
}

int ConeSystem::normalize(int cone) const { return ((cone % m_) + m_) % m_; }

double clockwise_angle(Point u, Point v)
{
    const Point d = v - u;
    double phi = std::atan2(d.x, d.y);
    if (phi < 0) {
        phi += 2.0 * std::numbers::pi;
    }
    return phi;
}

int cone_of(Point u, Point v, const ConeSystem& cones, double eps)
{
    const Point d = v - u;
    if (norm(d) <= eps) {
        throw BoundaryDegeneracy("cone_of: points coincide");
    }
    const double phi = clockwise_angle(u, v);
    const int cone = cones.normalize(static_cast<int>(std::floor(phi / cones.theta() + 0.5)));
    for (const Point ray : {cones.boundary_ccw(cone), cones.boundary_cw(cone)}) {
        if (std::abs(cross(ray, d)) < eps && dot(ray, d) > 0) {
            throw BoundaryDegeneracy("cone_of: direction lies on a cone boundary ray");
        }
    }
    return cone;
}

double CanonicalTriangle::height() const { return distance(apex, far_mid); }

bool CanonicalTriangle::contains(Point p, double eps) const
{
    const Point d = p - apex;
    const Point axis = far_mid - apex;
    const double h = norm(axis);
    if (h == 0.0) {
        return norm(d) <= eps;
    }
    const Point bis = (1.0 / h) * axis;
    const Point ccw = (1.0 / norm(corner_ccw - apex)) * (corner_ccw - apex);
    const Point cw = (1.0 / norm(corner_cw - apex)) * (corner_cw - apex);
    return cross(ccw, d) <= eps && cross(cw, d) >= -eps && dot(d, bis) <= h + eps;
}

CanonicalTriangle canonical_triangle_in_cone(Point u, Point w, int cone, const ConeSystem& cones)
{
    const Point d = w - u;
    const Point bis = cones.bisector(cone);
    const double h = dot(d, bis);
    const double side = h / std::cos(cones.theta() / 2.0);

    CanonicalTriangle t;
    t.apex = u;
    t.target = w;
    t.cone = cones.normalize(cone);
    t.corner_ccw = u + side * cones.boundary_ccw(cone);
    t.corner_cw = u + side * cones.boundary_cw(cone);
    t.far_mid = u + h * bis;
    t.alpha = std::atan2(std::abs(cross(bis, d)), h);
    return t;
}

CanonicalTriangle canonical_triangle(Point u, Point w, const ConeSystem& cones, double eps)
{
    return canonical_triangle_in_cone(u, w, cone_of(u, w, cones, eps), cones);
}

double projection_length(Point u, Point v, int cone, const ConeSystem& cones, double eps)
{
    if (cone_of(u, v, cones, eps) != cones.normalize(cone)) {
        throw NotInCone("projection_length: point is not in cone " + std::to_string(cone));
    }
    return dot(v - u, cones.bisector(cone));
}

std::vector<GeneralPositionViolationRecord>
validate_general_position(const std::vector<Point>& points, const ConeSystem& cones, double eps)
{
    std::vector<GeneralPositionViolationRecord> out;
    const int m = cones.cone_count();
    const std::size_t n = points.size();

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Point d = points[j] - points[i];
            if (norm(d) < eps) {
                out.push_back({DegeneracyKind::DuplicatePoint, {i, j}, -1});
                continue;
            }
            for (int r = 0; r < m; ++r) {
                if (std::abs(cross(cones.boundary_cw(r), d)) < eps) {
                    out.push_back({DegeneracyKind::ParallelToBoundaryRay, {i, j}, r});
                    break;
                }
            }
            for (int c = 0; c < m; ++c) {
                if (std::abs(dot(cones.bisector(c), d)) < eps) {
                    out.push_back({DegeneracyKind::PerpendicularToBisector, {i, j}, c});
                    break;
                }
            }
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t l = j + 1; l < n; ++l) {
                const Point a = points[i];
                const Point b = points[j];
                const Point c = points[l];
                const double longest = std::max({distance(a, b), distance(b, c), distance(a, c)});
                if (longest < eps) {
                    continue; // reported as duplicates
                }
                // Smallest altitude of the triangle.
                if (std::abs(cross(b - a, c - a)) / longest < eps) {
                    out.push_back({DegeneracyKind::CollinearTriple, {i, j, l}, -1});
                }
            }
        }
    }
    return out;
}

const char* to_string(DegeneracyKind kind)
{
    switch (kind) {
    case DegeneracyKind::ParallelToBoundaryRay:
        return "parallel_to_boundary_ray";
    case DegeneracyKind::PerpendicularToBisector:
        return "perpendicular_to_bisector";
    case DegeneracyKind::CollinearTriple:
        return "collinear_triple";
    case DegeneracyKind::DuplicatePoint:
        return "duplicate_point";
    }
    return "unknown";
}

} // namespace theta
