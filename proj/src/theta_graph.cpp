#include "theta/theta_graph.hpp"

#include "theta/errors.hpp"
#include "theta/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <tuple>

namespace theta {

std::vector<ConstraintId> Subcone::generators() const
{
    std::vector<ConstraintId> out;
    if (ccw_generator) {
        out.push_back(*ccw_generator);
    }
    if (cw_generator) {
        out.push_back(*cw_generator);
    }
    return out;
}

bool ThetaGraph::has_edge(PointId a, PointId b) const { return find_edge(a, b) != nullptr; }

const Edge* ThetaGraph::find_edge(PointId a, PointId b) const
{
    const auto [lo, hi] = std::minmax(a, b);
    const auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{lo, hi},
                                     [](const Edge& e, const std::pair<PointId, PointId>& key) {
                                         return std::pair{e.u, e.v} < key;
                                     });
    if (it == edges_.end() || it->u != lo || it->v != hi) {
        return nullptr;
    }
    return &*it;
}

void ThetaGraph::add(PointId a, PointId b, double weight, Provenance from)
{
    const auto [lo, hi] = std::minmax(a, b);
    edges_.push_back({lo, hi, weight, {from}});
}

void ThetaGraph::finalize()
{
    std::sort(edges_.begin(), edges_.end(), [](const Edge& l, const Edge& r) {
        return std::tie(l.u, l.v) < std::tie(r.u, r.v);
    });
    std::vector<Edge> merged;
    for (Edge& e : edges_) {
        if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v) {
            auto& prov = merged.back().provenance;
            prov.insert(prov.end(), e.provenance.begin(), e.provenance.end());
        } else {
            merged.push_back(std::move(e));
        }
    }
    for (Edge& e : merged) {
        std::sort(e.provenance.begin(), e.provenance.end(), [](const Provenance& l, const Provenance& r) {
            return std::tie(l.source, l.cone, l.subcone) < std::tie(r.source, r.cone, r.subcone);
        });
        e.provenance.erase(std::unique(e.provenance.begin(), e.provenance.end()), e.provenance.end());
    }
    edges_ = std::move(merged);
    std::sort(ray_ties_.begin(), ray_ties_.end(), [](const RayTie& l, const RayTie& r) {
        return std::tie(l.vertex, l.point, l.generator) < std::tie(r.vertex, r.point, r.generator);
    });
}

void require_general_position(const std::vector<Point>& points, const ConeSystem& cones, double eps)
{
    const auto violations = validate_general_position(points, cones, eps);
    if (violations.empty()) {
        return;
    }
    const auto& first = violations.front();
    std::string ids;
    for (const PointId p : first.points) {
        ids += (ids.empty() ? "" : ",") + std::to_string(p);
    }
    throw GeneralPositionViolation(std::string(to_string(first.kind)) + " at points " + ids + " (" +
                                   std::to_string(violations.size()) + " violation(s) total)");
}

namespace {

int checked_cone(Point u, Point v, const ConeSystem& cones, double eps)
{
    try {
        return cone_of(u, v, cones, eps);
    } catch (const BoundaryDegeneracy& e) {
        throw GeneralPositionViolation(e.what());
    }
}

/// Splitting rays of one cone, sorted clockwise.
struct ConeSplit {
    struct Ray {
        double offset; // clockwise angle from the cone's ccw boundary
        Point dir;
        ConstraintId constraint;
        PointId endpoint;
    };
    std::vector<Ray> rays;
};

std::vector<ConeSplit> split_cones(const Instance& inst, PointId u, const ConeSystem& cones, double eps)
{
    const int m = cones.cone_count();
    std::vector<ConeSplit> splits(static_cast<std::size_t>(m));
    for (ConstraintId c = 0; c < inst.constraints.size(); ++c) {
        const Segment& s = inst.constraints[c];
        if (s.a != u && s.b != u) {
            continue;
        }
        const PointId other = s.a == u ? s.b : s.a;
        const int cone = checked_cone(inst[u], inst[other], cones, eps);
        double offset = clockwise_angle(inst[u], inst[other]) - (cone - 0.5) * cones.theta();
        offset = std::fmod(offset + 4.0 * std::numbers::pi, 2.0 * std::numbers::pi);
        const Point d = inst[other] - inst[u];
        splits[static_cast<std::size_t>(cone)].rays.push_back({offset, (1.0 / norm(d)) * d, c, other});
    }
    for (auto& split : splits) {
        std::sort(split.rays.begin(), split.rays.end(), [](const auto& l, const auto& r) {
            return std::tie(l.offset, l.constraint) < std::tie(r.offset, r.constraint);
        });
    }
    return splits;
}

struct Membership {
    int cone = 0;
    int first = 0;  // subcone index
    int second = 0; // equal to first unless the point is a generator endpoint
    std::optional<ConstraintId> tie;
};

Membership classify(const Instance& inst, PointId u, PointId p, const std::vector<ConeSplit>& splits,
                    const ConeSystem& cones, double eps)
{
    Membership out;
    out.cone = checked_cone(inst[u], inst[p], cones, eps);
    const auto& rays = splits[static_cast<std::size_t>(out.cone)].rays;
    for (std::size_t r = 0; r < rays.size(); ++r) {
        if (rays[r].endpoint == p) {
            out.first = static_cast<int>(r);
            out.second = static_cast<int>(r) + 1;
            return out;
        }
    }
    const Point d = inst[p] - inst[u];
    int count = 0;
    for (const auto& ray : rays) {
        const double side = cross(ray.dir, d);
        if (std::abs(side) < eps) {
            out.tie = ray.constraint;
            ++count;
        } else if (side < 0) {
            ++count;
        }
    }
    out.first = out.second = count;
    return out;
}

std::vector<Subcone> make_subcones(PointId u, const std::vector<ConeSplit>& splits, const ConeSystem& cones)
{
    std::vector<Subcone> out;
    const double theta = cones.theta();
    for (int i = 0; i < cones.cone_count(); ++i) {
        const auto& rays = splits[static_cast<std::size_t>(i)].rays;
        const double base = (i - 0.5) * theta;
        for (std::size_t j = 0; j <= rays.size(); ++j) {
            Subcone sub;
            sub.vertex = u;
            sub.cone = i;
            sub.index = static_cast<int>(j);
            sub.start_angle = base + (j == 0 ? 0.0 : rays[j - 1].offset);
            sub.end_angle = base + (j == rays.size() ? theta : rays[j].offset);
            if (j > 0) {
                sub.ccw_generator = rays[j - 1].constraint;
            }
            if (j < rays.size()) {
                sub.cw_generator = rays[j].constraint;
            }
            out.push_back(sub);
        }
    }
    return out;
}

struct VertexResult {
    std::vector<std::tuple<PointId, double, Provenance>> edges;
    std::vector<RayTie> ties;
};

} // namespace

std::vector<Subcone> subcones(const Instance& inst, PointId u, const ConeSystem& cones, double eps)
{
    return make_subcones(u, split_cones(inst, u, cones, eps), cones);
}

std::vector<PointId> subcone_members(const Instance& inst, PointId u, const Subcone& sub,
                                     const ConeSystem& cones, double eps)
{
    const auto splits = split_cones(inst, u, cones, eps);
    std::vector<PointId> out;
    for (PointId p = 0; p < inst.size(); ++p) {
        if (p == u) {
            continue;
        }
        const Membership mem = classify(inst, u, p, splits, cones, eps);
        if (mem.cone == sub.cone && (mem.first == sub.index || mem.second == sub.index)) {
            out.push_back(p);
        }
    }
    return out;
}

ThetaGraph build_constrained_theta(const Instance& inst, const ConeSystem& cones, const BuildOptions& options)
{
    const double eps = options.tolerances.geom;
    validate_instance(inst, eps);
    if (options.check_general_position) {
        require_general_position(inst.points, cones, options.tolerances.general_position);
    }

    const std::size_t n = inst.size();
    std::vector<VertexResult> results(n);
    parallel_for(n, [&](std::size_t u) {
        const auto splits = split_cones(inst, u, cones, eps);
        const auto subs = make_subcones(u, splits, cones);

        // Candidates grouped per subcone, keyed by position in `subs`.
        std::vector<std::size_t> first_of_cone(static_cast<std::size_t>(cones.cone_count()) + 1, 0);
        for (std::size_t s = 0; s < subs.size(); ++s) {
            if (subs[s].index == 0) {
                first_of_cone[static_cast<std::size_t>(subs[s].cone)] = s;
            }
        }
        std::vector<std::vector<std::pair<double, PointId>>> candidates(subs.size());
        VertexResult& out = results[u];
        for (PointId p = 0; p < n; ++p) {
            if (p == u) {
                continue;
            }
            const Membership mem = classify(inst, u, p, splits, cones, eps);
            if (mem.tie) {
                out.ties.push_back({u, p, *mem.tie});
            }
            const double proj = dot(inst[p] - inst[u], cones.bisector(mem.cone));
            const std::size_t base = first_of_cone[static_cast<std::size_t>(mem.cone)];
            candidates[base + static_cast<std::size_t>(mem.first)].emplace_back(proj, p);
            if (mem.second != mem.first) {
                candidates[base + static_cast<std::size_t>(mem.second)].emplace_back(proj, p);
            }
        }
        for (std::size_t s = 0; s < subs.size(); ++s) {
            auto& list = candidates[s];
            std::sort(list.begin(), list.end());
            for (const auto& [proj, p] : list) {
                if (visible(inst, u, p, eps)) {
                    out.edges.emplace_back(p, distance(inst[u], inst[p]),
                                           Provenance{u, subs[s].cone, subs[s].index});
                    break;
                }
            }
        }
    });

    ThetaGraph g(n);
    for (std::size_t u = 0; u < n; ++u) {
        for (const auto& [p, weight, prov] : results[u].edges) {
            g.add(u, p, weight, prov);
        }
        for (const RayTie& tie : results[u].ties) {
            g.add_ray_tie(tie);
        }
    }
    g.finalize();
    return g;
}

ThetaGraph build_unconstrained_theta(const std::vector<Point>& points, const ConeSystem& cones,
                                     const BuildOptions& options)
{
    const double eps = options.tolerances.geom;
    if (options.check_general_position) {
        require_general_position(points, cones, options.tolerances.general_position);
    }
    const std::size_t n = points.size();
    const auto m = static_cast<std::size_t>(cones.cone_count());
    ThetaGraph g(n);
    for (PointId u = 0; u < n; ++u) {
        std::vector<std::optional<std::pair<double, PointId>>> best(m);
        for (PointId v = 0; v < n; ++v) {
            if (v == u) {
                continue;
            }
            const int cone = checked_cone(points[u], points[v], cones, eps);
            const std::pair key{dot(points[v] - points[u], cones.bisector(cone)), v};
            auto& slot = best[static_cast<std::size_t>(cone)];
            if (!slot || key < *slot) {
                slot = key;
            }
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (best[i]) {
                const PointId v = best[i]->second;
                g.add(u, v, distance(points[u], points[v]), Provenance{u, static_cast<int>(i), 0});
            }
        }
    }
    g.finalize();
    return g;
}

} // namespace theta
