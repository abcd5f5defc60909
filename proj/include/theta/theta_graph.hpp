#pragma once

#include "theta/geometry.hpp"
#include "theta/visibility.hpp"

#include <optional>
#include <vector>

namespace theta {

/// One angular piece of cone `cone` around `vertex`, cut out by the rays
/// through constraints incident to the vertex. Angles are clockwise from
/// north, `start_angle < end_angle`, and lie inside the cone's interval
/// (cone 0 may start below zero).
struct Subcone {
    PointId vertex = 0;
    int cone = 0;
    int index = 0;
    double start_angle = 0.0;
    double end_angle = 0.0;
    /// Constraint whose ray bounds the counterclockwise side, if any.
    std::optional<ConstraintId> ccw_generator;
    /// Constraint whose ray bounds the clockwise side, if any.
    std::optional<ConstraintId> cw_generator;

    std::vector<ConstraintId> generators() const;
};

struct Provenance {
    PointId source = 0;
    int cone = 0;
    int subcone = 0;

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct Edge {
    PointId u = 0; ///< smaller endpoint
    PointId v = 0; ///< larger endpoint
    double weight = 0.0;
    std::vector<Provenance> provenance;
};

/// A point that sat numerically on a splitting ray without being that
/// ray's constraint endpoint. It was assigned to the clockwise subcone.
struct RayTie {
    PointId vertex = 0;
    PointId point = 0;
    ConstraintId generator = 0;
};

class ThetaGraph {
public:
    ThetaGraph() = default;
    explicit ThetaGraph(std::size_t n)
        : n_(n)
    {}

    std::size_t size() const { return n_; }
    /// Sorted by (u, v); each undirected pair appears once.
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<RayTie>& ray_ties() const { return ray_ties_; }

    bool has_edge(PointId a, PointId b) const;
    const Edge* find_edge(PointId a, PointId b) const;

    /// Adds (or merges provenance into) the undirected edge {a, b}.
    void add(PointId a, PointId b, double weight, Provenance from);
    void add_ray_tie(RayTie tie) { ray_ties_.push_back(tie); }
    /// Sorts edges and provenance; called once construction is complete.
    void finalize();

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<RayTie> ray_ties_;
};

struct BuildOptions {
    Tolerances tolerances;
    /// Reject inputs that are not in general position.
    bool check_general_position = true;
};

/// Subcones of every cone of u, ordered by cone then clockwise.
std::vector<Subcone> subcones(const Instance& inst, PointId u, const ConeSystem& cones,
                              double eps = Tolerances{}.geom);

/// Points strictly inside the subcone's angular interval plus the
/// endpoints of its generating constraints.
std::vector<PointId> subcone_members(const Instance& inst, PointId u, const Subcone& sub,
                                     const ConeSystem& cones, double eps = Tolerances{}.geom);

/// Constrained theta-graph: per subcone, an edge to the visible member with
/// the smallest projection on the original cone's bisector (ties to the
/// smaller id).
ThetaGraph build_constrained_theta(const Instance& inst, const ConeSystem& cones,
                                   const BuildOptions& options = {});

/// Classic theta-graph over the bare point set (no subcones, no
/// visibility), used as an oracle for the constraint-free case.
ThetaGraph build_unconstrained_theta(const std::vector<Point>& points, const ConeSystem& cones,
                                     const BuildOptions& options = {});

/// Throws GeneralPositionViolation describing the first degeneracy.
void require_general_position(const std::vector<Point>& points, const ConeSystem& cones,
                              double eps = Tolerances{}.general_position);

} // namespace theta
