#pragma once

#include <cstddef>
#include <vector>

namespace theta {

using PointId = std::size_t;
using ConstraintId = std::size_t;

/// Absolute tolerances used by the floating-point predicates.
///
/// `geom` applies to cross products against unit directions (so it is a
/// perpendicular distance), `general_position` to the degeneracy checks of
/// validate_general_position.
struct Tolerances {
    double geom = 1e-9;
    double general_position = 1e-9;
};

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Point a, Point b) = default;
};

double dot(Point a, Point b);
double cross(Point a, Point b);
double norm(Point a);
double distance(Point a, Point b);

/// Counterclockwise rotation about `center`.
Point rotate(Point p, double radians, Point center = {});

/// Undirected segment between two instance points.
struct Segment {
    PointId a = 0;
    PointId b = 0;

    friend bool operator==(const Segment&, const Segment&) = default;
};

enum class Orientation { CounterClockwise, Clockwise, Collinear };

Orientation orientation(Point p, Point q, Point r, double eps = Tolerances{}.geom);

/// True iff the open interiors of segments p1q1 and p2q2 cross.
/// Contact at an endpoint never counts.
bool proper_intersection(Point p1, Point q1, Point p2, Point q2,
                         double eps = Tolerances{}.geom);

/// Cone layout around every vertex: `m = 4k + x` cones of aperture
/// `2*pi/m`, cone 0 bisected by the upward vertical, indices increasing
/// clockwise.
class ConeSystem {
public:
    /// Throws UnsupportedConeCount unless m >= 6.
    explicit ConeSystem(int m);

    int cone_count() const { return m_; }
    int k() const { return k_; }
    int family() const { return x_; }
    double theta() const { return theta_; }

    /// Unit vector at `angle` radians measured clockwise from north.
    static Point direction(double angle);

    Point bisector(int cone) const;
    /// Boundary ray on the counterclockwise side of `cone`.
    Point boundary_ccw(int cone) const;
    /// Boundary ray on the clockwise side of `cone`.
    Point boundary_cw(int cone) const;

    int normalize(int cone) const;

private:
    int m_;
    int k_;
    int x_;
    double theta_;
};

/// Index of the cone of `u` containing `v`. Throws BoundaryDegeneracy when
/// v lies within `eps` of a boundary ray (or coincides with u).
int cone_of(Point u, Point v, const ConeSystem& cones, double eps = Tolerances{}.geom);

/// Angle in [0, 2pi) of the direction u->v, clockwise from north.
double clockwise_angle(Point u, Point v);

struct CanonicalTriangle {
    Point apex;
    Point target;
    int cone = 0;
    Point corner_ccw;
    Point corner_cw;
    Point far_mid;
    double alpha = 0.0;

    /// Distance from the apex to the far side.
    double height() const;
    /// Closed-set membership with absolute slack `eps`.
    bool contains(Point p, double eps = Tolerances{}.geom) const;
};

CanonicalTriangle canonical_triangle(Point u, Point w, const ConeSystem& cones,
                                     double eps = Tolerances{}.geom);

/// Canonical triangle of w in a given cone of u, without the cone lookup.
/// Used where w sits on a boundary ray (limit placements).
CanonicalTriangle canonical_triangle_in_cone(Point u, Point w, int cone,
                                             const ConeSystem& cones);

/// Scalar projection of u->v on the bisector of cone `cone` of u.
/// Throws NotInCone if v is not in that cone.
double projection_length(Point u, Point v, int cone, const ConeSystem& cones,
                         double eps = Tolerances{}.geom);

enum class DegeneracyKind {
    ParallelToBoundaryRay,
    PerpendicularToBisector,
    CollinearTriple,
    DuplicatePoint,
};

struct GeneralPositionViolationRecord {
    DegeneracyKind kind;
    std::vector<PointId> points;
    /// Boundary-ray or cone index involved, -1 for triples and duplicates.
    int direction = -1;
};

/// Every degeneracy of `points` with respect to `cones`. Violations are
/// data; an empty result means general position.
std::vector<GeneralPositionViolationRecord>
validate_general_position(const std::vector<Point>& points, const ConeSystem& cones,
                          double eps = Tolerances{}.general_position);

const char* to_string(DegeneracyKind kind);

} // namespace theta
