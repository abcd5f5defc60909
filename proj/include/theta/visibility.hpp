#pragma once

#include "theta/geometry.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace theta {

/// Point set plus planar segment constraints between its points.
struct Instance {
    std::vector<Point> points;
    std::vector<Segment> constraints;

    std::size_t size() const { return points.size(); }
    Point operator[](PointId id) const { return points[id]; }

    /// Constraint joining a and b, in either order.
    std::optional<ConstraintId> find_constraint(PointId a, PointId b) const;
};

/// Human-readable descriptions of every broken Instance invariant
/// (index range, degenerate or duplicate constraints, duplicate points,
/// crossing constraints). Empty when valid.
std::vector<std::string> instance_problems(const Instance& inst, double eps = Tolerances{}.geom);

/// Throws InvalidInstance (or IndexOutOfRange) on the first problem.
void validate_instance(const Instance& inst, double eps = Tolerances{}.geom);

/// u and v see each other: uv is a constraint or crosses none.
bool visible(const Instance& inst, PointId u, PointId v, double eps = Tolerances{}.geom);

class VisibilityGraph {
public:
    explicit VisibilityGraph(std::size_t n);

    std::size_t size() const { return n_; }
    bool related(PointId u, PointId v) const { return adj_[u * n_ + v] != 0; }
    void relate(PointId u, PointId v);
    std::size_t pair_count() const;

private:
    std::size_t n_;
    std::vector<std::uint8_t> adj_;
};

/// Brute-force Vis(P, S). Throws InvalidInstance if the constraints are
/// not planar.
VisibilityGraph visibility_graph(const Instance& inst, double eps = Tolerances{}.geom);

struct ChainFrame {
    PointId u = 0;
    PointId v = 0;
    PointId w = 0;
};

struct ConvexChain {
    std::vector<PointId> vertices;
    ChainFrame frame;
};

/// A convex chain of visibility edges from u to v inside triangle uvw
/// whose pocket toward w is empty of points and constraints.
///
/// Requires uw and vw to be visibility edges and w not to be an endpoint of
/// a constraint entering the open triangle; throws PreconditionViolated
/// otherwise. Under those hypotheses every constraint meeting the triangle
/// interior has an endpoint inside it, so the chain is the w-facing hull of
/// {u, v} plus the interior points, computed by gift wrapping.
ConvexChain convex_chain(const Instance& inst, PointId u, PointId v, PointId w,
                         double eps = Tolerances{}.geom);

/// Checks every chain property: endpoints, visibility of consecutive
/// pairs, containment in the frame triangle, uniform turning away from w,
/// and an empty, constraint-free pocket.
bool verify_chain(const Instance& inst, const ConvexChain& chain,
                  double eps = Tolerances{}.geom);

} // namespace theta
