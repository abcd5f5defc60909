#include "theta/visibility.hpp"

#include "theta/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

namespace theta {

std::optional<ConstraintId> Instance::find_constraint(PointId a, PointId b) const
{
    for (ConstraintId c = 0; c < constraints.size(); ++c) {
        const Segment& s = constraints[c];
        if ((s.a == a && s.b == b) || (s.a == b && s.b == a)) {
            return c;
        }
    }
    return std::nullopt;
}

namespace {

bool indices_in_range(const Instance& inst, const Segment& s)
{
    return s.a < inst.size() && s.b < inst.size();
}

} // namespace

std::vector<std::string> instance_problems(const Instance& inst, double eps)
{
    std::vector<std::string> problems;
    const std::size_t n = inst.size();

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (distance(inst[i], inst[j]) < eps) {
                problems.push_back("duplicate points " + std::to_string(i) + " and " +
                                   std::to_string(j));
            }
        }
    }

    std::set<std::pair<PointId, PointId>> seen;
    for (ConstraintId c = 0; c < inst.constraints.size(); ++c) {
        const Segment& s = inst.constraints[c];
        const std::string name = "constraint " + std::to_string(c);
        if (!indices_in_range(inst, s)) {
            problems.push_back(name + " references a point index out of range");
            continue;
        }
        if (s.a == s.b) {
            problems.push_back(name + " has identical endpoints");
            continue;
        }
        if (!seen.insert(std::minmax(s.a, s.b)).second) {
            problems.push_back(name + " duplicates an earlier constraint");
        }
    }

    for (ConstraintId c = 0; c < inst.constraints.size(); ++c) {
        const Segment& s = inst.constraints[c];
        if (!indices_in_range(inst, s)) {
            continue;
        }
        for (ConstraintId d = c + 1; d < inst.constraints.size(); ++d) {
            const Segment& t = inst.constraints[d];
            if (!indices_in_range(inst, t)) {
                continue;
            }
            if (proper_intersection(inst[s.a], inst[s.b], inst[t.a], inst[t.b], eps)) {
                problems.push_back("constraints " + std::to_string(c) + " and " +
                                   std::to_string(d) + " cross");
            }
        }
    }
    return problems;
}

void validate_instance(const Instance& inst, double eps)
{
    for (const Segment& s : inst.constraints) {
        if (!indices_in_range(inst, s)) {
            throw IndexOutOfRange("constraint endpoint index out of range");
        }
    }
    const auto problems = instance_problems(inst, eps);
    if (!problems.empty()) {
        throw InvalidInstance(problems.front());
    }
}

bool visible(const Instance& inst, PointId u, PointId v, double eps)
{
    const Point p = inst[u];
    const Point q = inst[v];
    for (const Segment& s : inst.constraints) {
        if ((s.a == u && s.b == v) || (s.a == v && s.b == u)) {
            continue;
        }
        if (proper_intersection(p, q, inst[s.a], inst[s.b], eps)) {
            return false;
        }
    }
    return true;
}

VisibilityGraph::VisibilityGraph(std::size_t n)
    : n_(n)
    , adj_(n * n, 0)
{}

void VisibilityGraph::relate(PointId u, PointId v)
{
    adj_[u * n_ + v] = 1;
    adj_[v * n_ + u] = 1;
}

std::size_t VisibilityGraph::pair_count() const
{
    return static_cast<std::size_t>(std::count(adj_.begin(), adj_.end(), 1)) / 2;
}

VisibilityGraph visibility_graph(const Instance& inst, double eps)
{
    validate_instance(inst, eps);
    VisibilityGraph g(inst.size());
    for (PointId u = 0; u < inst.size(); ++u) {
        for (PointId v = u + 1; v < inst.size(); ++v) {
            if (visible(inst, u, v, eps)) {
                g.relate(u, v);
            }
        }
    }
    return g;
}

namespace {

bool strictly_inside_triangle(Point a, Point b, Point c, Point p, Orientation o, double eps)
{
    return orientation(a, b, p, eps) == o && orientation(b, c, p, eps) == o &&
           orientation(c, a, p, eps) == o;
}

bool inside_triangle_closed(Point a, Point b, Point c, Point p, Orientation o, double eps)
{
    const Orientation opposite =
        o == Orientation::CounterClockwise ? Orientation::Clockwise : Orientation::CounterClockwise;
    return orientation(a, b, p, eps) != opposite && orientation(b, c, p, eps) != opposite &&
           orientation(c, a, p, eps) != opposite;
}

} // namespace

ConvexChain convex_chain(const Instance& inst, PointId u, PointId v, PointId w, double eps)
{
    const std::size_t n = inst.size();
    if (u >= n || v >= n || w >= n) {
        throw IndexOutOfRange("convex_chain: point index out of range");
    }
    if (u == v || v == w || u == w) {
        throw PreconditionViolated("convex_chain: frame points must be distinct");
    }
    const Orientation o = orientation(inst[u], inst[v], inst[w], eps);
    if (o == Orientation::Collinear) {
        throw PreconditionViolated("convex_chain: frame points are collinear");
    }
    if (!visible(inst, u, w, eps) || !visible(inst, v, w, eps)) {
        throw PreconditionViolated("convex_chain: uw and vw must be visibility edges");
    }
    const Orientation at_w_u = orientation(inst[w], inst[u], inst[v], eps);
    const Orientation at_w_v = orientation(inst[w], inst[v], inst[u], eps);
    for (const Segment& s : inst.constraints) {
        if (s.a != w && s.b != w) {
            continue;
        }
        const Point p = inst[s.a == w ? s.b : s.a];
        if (orientation(inst[w], inst[u], p, eps) == at_w_u &&
            orientation(inst[w], inst[v], p, eps) == at_w_v) {
            throw PreconditionViolated(
                "convex_chain: w is the endpoint of a constraint entering the triangle");
        }
    }

    std::vector<PointId> candidates;
    for (PointId p = 0; p < n; ++p) {
        if (p == v ||
            (p != u && p != w && strictly_inside_triangle(inst[u], inst[v], inst[w], inst[p], o, eps))) {
            candidates.push_back(p);
        }
    }

    ConvexChain chain;
    chain.frame = {u, v, w};
    chain.vertices.push_back(u);
    std::vector<bool> used(n, false);
    used[u] = true;

    PointId current = u;
    while (current != v) {
        std::optional<PointId> best;
        for (const PointId r : candidates) {
            if (used[r]) {
                continue;
            }
            if (!best) {
                best = r;
                continue;
            }
            const Orientation turn = orientation(inst[current], inst[*best], inst[r], eps);
            if (turn == o ||
                (turn == Orientation::Collinear &&
                 distance(inst[current], inst[r]) < distance(inst[current], inst[*best]))) {
                best = r;
            }
        }
        if (!best || chain.vertices.size() > n) {
            throw Error("convex_chain: gift wrapping did not reach v");
        }
        current = *best;
        used[current] = true;
        chain.vertices.push_back(current);
    }
    return chain;
}

bool verify_chain(const Instance& inst, const ConvexChain& chain, double eps)
{
    const std::size_t n = inst.size();
    const auto& vs = chain.vertices;
    const auto [u, v, w] = chain.frame;
    if (u >= n || v >= n || w >= n || vs.size() < 2 || vs.front() != u || vs.back() != v) {
        return false;
    }
    const Orientation o = orientation(inst[u], inst[v], inst[w], eps);
    if (o == Orientation::Collinear) {
        return false;
    }

    std::vector<bool> on_chain(n, false);
    for (const PointId p : vs) {
        if (p >= n || p == w || on_chain[p]) {
            return false;
        }
        on_chain[p] = true;
        if (!inside_triangle_closed(inst[u], inst[v], inst[w], inst[p], o, eps)) {
            return false;
        }
        if (p != u && p != v && orientation(inst[u], inst[v], inst[p], eps) != o) {
            return false;
        }
    }

    for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
        if (!visible(inst, vs[i], vs[i + 1], eps)) {
            return false;
        }
    }
    for (std::size_t i = 0; i + 2 < vs.size(); ++i) {
        if (orientation(inst[vs[i]], inst[vs[i + 1]], inst[vs[i + 2]], eps) == o) {
            return false;
        }
    }
    // Convex position: w strictly outside every chain edge, all chain
    // vertices on the far side.
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
        const Point a = inst[vs[i]];
        const Point b = inst[vs[i + 1]];
        if (orientation(a, b, inst[w], eps) != o) {
            return false;
        }
        for (const PointId p : vs) {
            if (orientation(a, b, inst[p], eps) == o) {
                return false;
            }
        }
    }

    auto in_pocket = [&](Point p) {
        if (!strictly_inside_triangle(inst[u], inst[v], inst[w], p, o, eps)) {
            return false;
        }
        for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
            if (orientation(inst[vs[i]], inst[vs[i + 1]], p, eps) == o) {
                return true;
            }
        }
        return false;
    };

    for (PointId p = 0; p < n; ++p) {
        if (!on_chain[p] && p != w && in_pocket(inst[p])) {
            return false;
        }
    }

    // Pocket boundary: w, u = v_0, ..., v_l = v, back to w.
    std::vector<Point> boundary{inst[w]};
    for (const PointId p : vs) {
        boundary.push_back(inst[p]);
    }
    for (const Segment& s : inst.constraints) {
        const Point a = inst[s.a];
        const Point b = inst[s.b];
        const Point ab = b - a;
        std::vector<double> cuts{0.0, 1.0};
        for (std::size_t i = 0; i < boundary.size(); ++i) {
            const Point p = boundary[i];
            const Point q = boundary[(i + 1) % boundary.size()];
            const Point pq = q - p;
            const double denom = cross(ab, pq);
            if (std::abs(denom) < 1e-15) {
                continue;
            }
            const double t = cross(p - a, pq) / denom;
            const double s_edge = cross(p - a, ab) / denom;
            if (t > 0.0 && t < 1.0 && s_edge >= -1e-12 && s_edge <= 1.0 + 1e-12) {
                cuts.push_back(t);
            }
        }
        std::sort(cuts.begin(), cuts.end());
        for (const double t : cuts) {
            if (in_pocket(a + t * ab)) {
                return false;
            }
        }
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            if (in_pocket(a + (0.5 * (cuts[i] + cuts[i + 1])) * ab)) {
                return false;
            }
        }
    }
    return true;
}

} // namespace theta
