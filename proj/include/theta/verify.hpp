#pragma once

#include "theta/bounds.hpp"
#include "theta/geometry.hpp"
#include "theta/theta_graph.hpp"
#include "theta/visibility.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace theta {

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

/// Relative slack applied to every bound comparison in reports.
inline constexpr double kViolationSlack = 1e-7;

using Adjacency = std::vector<std::vector<std::pair<PointId, double>>>;

Adjacency adjacency(const ThetaGraph& g);
/// Visibility graph weighted by Euclidean length.
Adjacency adjacency(const VisibilityGraph& vis, const Instance& inst);

/// Dijkstra over non-negative weights; unreachable vertices get kUnreachable.
std::vector<double> dijkstra(const Adjacency& adj, PointId source);
std::vector<double> shortest_paths(const ThetaGraph& g, PointId source);

struct PairRecord {
    PointId u = 0;
    PointId w = 0;
    double delta = 0.0;  ///< graph distance
    double euclid = 0.0; ///< |uw|
    double alpha = 0.0;  ///< angle of T_uw
    double alpha_reverse = 0.0; ///< angle of T_wu
    double bound = 0.0;  ///< per-pair multiplier
    double ratio = 0.0;  ///< delta / euclid
    bool violation = false;
};

/// A pair (visible or not) breaking d_G <= bound * d_Vis.
struct VisViolation {
    PointId u = 0;
    PointId w = 0;
    double graph_distance = 0.0;
    double vis_distance = 0.0;
};

struct RatioReport {
    int m = 0;
    int k = 0;
    int x = 0;
    double theta = 0.0;
    double bound = 0.0;     ///< spanning_ratio_bound of the family
    double max_ratio = 1.0; ///< over visible pairs
    double max_bound = 0.0; ///< largest per-pair bound
    std::optional<std::pair<PointId, PointId>> argmax;
    double max_vis_ratio = 1.0; ///< max d_G / d_Vis over all connected pairs
    std::vector<PairRecord> pairs; ///< visible pairs, u < w
    std::vector<std::size_t> violations; ///< indices into pairs
    std::vector<VisViolation> vis_violations;
    std::vector<std::pair<PointId, PointId>> connectivity_mismatches;
    std::size_t edge_count = 0;

    bool clean() const
    {
        return violations.empty() && vis_violations.empty() && connectivity_mismatches.empty();
    }
};

/// Builds the constrained graph of `inst` and checks every visible pair
/// against its per-pair bound and every pair against the spanning ratio
/// with respect to Vis(P, S).
RatioReport pair_ratio_report(const Instance& inst, const ConeSystem& cones,
                              const BuildOptions& options = {});

/// Same checks for an already built graph.
RatioReport pair_ratio_report(const Instance& inst, const ConeSystem& cones, const ThetaGraph& g,
                              double eps = Tolerances{}.geom);

/// Near-worst-case instance for a 4k+2 family: u at the origin, w at angle
/// theta/2 - eps from the bisector of C_0^u, and two blockers near the far
/// corners of T_uw and T_wu. Point ids: 0 = u, 1 = w, 2 = blocker in
/// T_uw, 3 = blocker in T_wu. Throws PreconditionViolated unless x = 2 and
/// 0 < eps < theta/2.
Instance tightness_fixture(const FamilySpec& spec, double eps);

struct RandomInstanceOptions {
    std::size_t points = 50;
    std::size_t constraints = 0;
    /// Cone counts the result must be in general position for.
    std::vector<int> cone_counts{6, 7, 8, 9, 10, 11, 12, 13};
    double jitter = 1e-6;
    Tolerances tolerances;
};

/// Uniform points in the unit square with up to `constraints` non-crossing
/// constraints joining near neighbours, in general position for every
/// requested cone count.
Instance random_instance(std::uint64_t seed, const RandomInstanceOptions& options = {});

/// Adds one random constraint that keeps the set planar; false if none fits.
bool add_random_constraint(Instance& inst, std::uint64_t seed, double eps = Tolerances{}.geom);

/// Moves every point by a uniform offset in [-amplitude, amplitude]^2.
void jitter_points(Instance& inst, double amplitude, std::uint64_t seed);

/// Largest delta(u, w) / |uw| over visible pairs; nullopt when the
/// instance is invalid or not in general position.
std::optional<double> max_visible_ratio(const Instance& inst, const ConeSystem& cones);

struct SearchOptions {
    std::size_t points = 6;
    /// 0 runs a point-only search. Otherwise a constraint phase of
    /// iterations / 2 extra steps refines the point-only optimum.
    std::size_t max_constraints = 0;
    std::size_t restarts = 8;
};

struct SearchResult {
    Instance best;
    double achieved = 1.0;
    double bound = 0.0;
    /// Set when an instance exceeded the spanning-ratio bound.
    std::optional<Instance> certificate;
    std::size_t evaluations = 0;
};

/// Random restarts plus single-point hill climbing maximizing the max
/// visible-pair ratio. For 4k+2 families restart 0 starts from the
/// tightness fixture. Deterministic for a given (spec, seed, iterations,
/// options) regardless of thread count.
SearchResult adversarial_search(const FamilySpec& spec, std::uint64_t seed, std::size_t iterations,
                                const SearchOptions& options = {});

/// The chain walked in the spanning argument for a visible pair (u, w)
/// without a direct edge: v0 is u's closest visible vertex in the subcone
/// containing w, the chain runs from v0 to w inside triangle v0 u w.
/// Coordinates in `frame_points` are rotated (and mirrored when v0 lies
/// right of uw) so that w is in C_0^u and v0 is left of uw.
struct SpanningChain {
    PointId v0 = 0;
    ConvexChain chain;
    std::vector<Point> frame_points;
    std::vector<ConfigurationType> types;
};

/// Nullopt when (u, w) is an edge, not visible, or the chain hypotheses do
/// not hold numerically.
std::optional<SpanningChain> spanning_chain(const Instance& inst, const ThetaGraph& g,
                                            const FamilySpec& spec, PointId u, PointId w);

} // namespace theta
