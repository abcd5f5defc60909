#include "theta/verify.hpp"

#include "theta/errors.hpp"
#include "theta/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <queue>
#include <random>

namespace theta {

Adjacency adjacency(const ThetaGraph& g)
{
    Adjacency adj(g.size());
    for (const Edge& e : g.edges()) {
        adj[e.u].emplace_back(e.v, e.weight);
        adj[e.v].emplace_back(e.u, e.weight);
    }
    return adj;
}

Adjacency adjacency(const VisibilityGraph& vis, const Instance& inst)
{
    Adjacency adj(vis.size());
    for (PointId u = 0; u < vis.size(); ++u) {
        for (PointId v = 0; v < vis.size(); ++v) {
            if (u != v && vis.related(u, v)) {
                adj[u].emplace_back(v, distance(inst[u], inst[v]));
            }
        }
    }
    return adj;
}

std::vector<double> dijkstra(const Adjacency& adj, PointId source)
{
    std::vector<double> dist(adj.size(), kUnreachable);
    using Entry = std::pair<double, PointId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    dist[source] = 0.0;
    queue.emplace(0.0, source);
    while (!queue.empty()) {
        const auto [d, u] = queue.top();
        queue.pop();
        if (d > dist[u]) {
            continue;
        }
        for (const auto& [v, weight] : adj[u]) {
            const double candidate = d + weight;
            if (candidate < dist[v]) {
                dist[v] = candidate;
                queue.emplace(candidate, v);
            }
        }
    }
    return dist;
}

std::vector<double> shortest_paths(const ThetaGraph& g, PointId source)
{
    return dijkstra(adjacency(g), source);
}

RatioReport pair_ratio_report(const Instance& inst, const ConeSystem& cones, const BuildOptions& options)
{
    const ThetaGraph g = build_constrained_theta(inst, cones, options);
    return pair_ratio_report(inst, cones, g, options.tolerances.geom);
}

RatioReport pair_ratio_report(const Instance& inst, const ConeSystem& cones, const ThetaGraph& g, double eps)
{
    const FamilySpec spec = family_of(cones.cone_count());
    const VisibilityGraph vis = visibility_graph(inst, eps);
    const Adjacency graph_adj = adjacency(g);
    const Adjacency vis_adj = adjacency(vis, inst);
    const std::size_t n = inst.size();

    RatioReport report;
    report.m = spec.m();
    report.k = spec.k();
    report.x = spec.x();
    report.theta = spec.theta();
    report.bound = spanning_ratio_bound(spec);
    report.edge_count = g.edges().size();

    struct SourceResult {
        std::vector<PairRecord> pairs;
        std::vector<VisViolation> vis_violations;
        std::vector<std::pair<PointId, PointId>> mismatches;
        double max_vis_ratio = 1.0;
    };
    std::vector<SourceResult> per_source(n);

    parallel_for(n, [&](std::size_t u) {
        const auto graph_dist = dijkstra(graph_adj, u);
        const auto vis_dist = dijkstra(vis_adj, u);
        SourceResult& out = per_source[u];
        for (PointId w = u + 1; w < n; ++w) {
            const bool graph_reach = graph_dist[w] != kUnreachable;
            const bool vis_reach = vis_dist[w] != kUnreachable;
            if (graph_reach != vis_reach) {
                out.mismatches.emplace_back(u, w);
            }
            if (vis_reach) {
                const double limit = report.bound * vis_dist[w] * (1 + kViolationSlack);
                if (!(graph_dist[w] <= limit)) {
                    out.vis_violations.push_back({u, w, graph_dist[w], vis_dist[w]});
                }
                if (graph_reach) {
                    out.max_vis_ratio = std::max(out.max_vis_ratio, graph_dist[w] / vis_dist[w]);
                }
            }
            if (!vis.related(u, w)) {
                continue;
            }
            PairRecord rec;
            rec.u = u;
            rec.w = w;
            rec.delta = graph_dist[w];
            rec.euclid = distance(inst[u], inst[w]);
            rec.alpha = canonical_triangle(inst[u], inst[w], cones, eps).alpha;
            rec.alpha_reverse = canonical_triangle(inst[w], inst[u], cones, eps).alpha;
            rec.bound = std::min(path_bound(spec, rec.alpha), path_bound(spec, rec.alpha_reverse));
            rec.ratio = rec.delta / rec.euclid;
            rec.violation = !(rec.ratio <= rec.bound * (1 + kViolationSlack));
            out.pairs.push_back(rec);
        }
    });

    for (const SourceResult& r : per_source) {
        for (const PairRecord& rec : r.pairs) {
            if (rec.violation) {
                report.violations.push_back(report.pairs.size());
            }
            if (rec.ratio > report.max_ratio || !report.argmax) {
                report.max_ratio = std::max(report.max_ratio, rec.ratio);
                if (rec.ratio >= report.max_ratio) {
                    report.argmax = std::pair{rec.u, rec.w};
                }
            }
            report.max_bound = std::max(report.max_bound, rec.bound);
            report.pairs.push_back(rec);
        }
        report.vis_violations.insert(report.vis_violations.end(), r.vis_violations.begin(),
                                     r.vis_violations.end());
        report.connectivity_mismatches.insert(report.connectivity_mismatches.end(), r.mismatches.begin(),
                                              r.mismatches.end());
        report.max_vis_ratio = std::max(report.max_vis_ratio, r.max_vis_ratio);
    }
    return report;
}

Instance tightness_fixture(const FamilySpec& spec, double eps)
{
    const double theta = spec.theta();
    if (spec.x() != 2) {
        throw PreconditionViolated("tightness fixture exists for 4k+2 cone counts only");
    }
    if (!(eps > 0 && eps < theta / 2)) {
        throw PreconditionViolated("tightness fixture needs 0 < eps < theta/2");
    }
    const double phi = theta / 2 - eps;
    const double h = std::cos(phi);
    const double inner = h * (1 - eps);

    Instance inst;
    const Point u{0.0, 0.0};
    const Point w = ConeSystem::direction(phi);
    inst.points = {
        u,
        w,
        Point{-inner * std::tan(phi), inner},
        w + Point{inner * std::tan(phi), -inner},
    };
    return inst;
}

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    std::uint64_t out = 0;
    std::array<std::uint32_t, 2> words{};
    seq.generate(words.begin(), words.end());
    out = (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
    return out;
}

bool in_general_position(const std::vector<Point>& points, const std::vector<int>& cone_counts,
                         const Tolerances& tol, std::vector<PointId>* offenders = nullptr)
{
    bool ok = true;
    for (const int m : cone_counts) {
        for (const auto& v : validate_general_position(points, ConeSystem(m), tol.general_position)) {
            ok = false;
            if (!offenders) {
                return false;
            }
            offenders->insert(offenders->end(), v.points.begin(), v.points.end());
        }
    }
    return ok;
}

std::vector<PointId> nearest_neighbours(const Instance& inst, PointId p, std::size_t count)
{
    std::vector<PointId> ids;
    for (PointId q = 0; q < inst.size(); ++q) {
        if (q != p) {
            ids.push_back(q);
        }
    }
    std::sort(ids.begin(), ids.end(), [&](PointId a, PointId b) {
        return std::pair{distance(inst[p], inst[a]), a} < std::pair{distance(inst[p], inst[b]), b};
    });
    ids.resize(std::min(count, ids.size()));
    return ids;
}

bool can_add_constraint(const Instance& inst, PointId a, PointId b, double eps)
{
    if (a == b || inst.find_constraint(a, b)) {
        return false;
    }
    for (const Segment& s : inst.constraints) {
        if (proper_intersection(inst[a], inst[b], inst[s.a], inst[s.b], eps)) {
            return false;
        }
    }
    // No instance point may sit on the new segment.
    for (PointId p = 0; p < inst.size(); ++p) {
        if (p != a && p != b && orientation(inst[a], inst[b], inst[p], eps) == Orientation::Collinear &&
            dot(inst[p] - inst[a], inst[b] - inst[a]) > 0 && dot(inst[p] - inst[b], inst[a] - inst[b]) > 0) {
            return false;
        }
    }
    return true;
}

} // namespace

void jitter_points(Instance& inst, double amplitude, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> offset(-amplitude, amplitude);
    for (Point& p : inst.points) {
        p.x += offset(rng);
        p.y += offset(rng);
    }
}

bool add_random_constraint(Instance& inst, std::uint64_t seed, double eps)
{
    if (inst.size() < 2) {
        return false;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<PointId> pick(0, inst.size() - 1);
    for (int attempt = 0; attempt < 200; ++attempt) {
        const PointId a = pick(rng);
        const auto near = nearest_neighbours(inst, a, 8);
        std::uniform_int_distribution<std::size_t> which(0, near.size() - 1);
        const PointId b = near[which(rng)];
        if (can_add_constraint(inst, a, b, eps)) {
            inst.constraints.push_back({std::min(a, b), std::max(a, b)});
            return true;
        }
    }
    return false;
}

Instance random_instance(std::uint64_t seed, const RandomInstanceOptions& options)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> nudge(-options.jitter, options.jitter);

    Instance inst;
    for (;;) {
        inst.points.clear();
        for (std::size_t i = 0; i < options.points; ++i) {
            const double x = unit(rng);
            inst.points.push_back({x, unit(rng)});
        }
        bool settled = false;
        for (int round = 0; round < 100 && !settled; ++round) {
            std::vector<PointId> offenders;
            if (in_general_position(inst.points, options.cone_counts, options.tolerances, &offenders)) {
                settled = true;
                break;
            }
            std::sort(offenders.begin(), offenders.end());
            offenders.erase(std::unique(offenders.begin(), offenders.end()), offenders.end());
            for (const PointId p : offenders) {
                inst.points[p].x += nudge(rng);
                inst.points[p].y += nudge(rng);
            }
        }
        if (settled) {
            break;
        }
    }

    if (options.points >= 2) {
        std::uniform_int_distribution<PointId> pick(0, options.points - 1);
        for (std::size_t attempt = 0;
             attempt < 50 * options.constraints && inst.constraints.size() < options.constraints; ++attempt) {
            const PointId a = pick(rng);
            const auto near = nearest_neighbours(inst, a, 6);
            std::uniform_int_distribution<std::size_t> which(0, near.size() - 1);
            const PointId b = near[which(rng)];
            if (can_add_constraint(inst, a, b, options.tolerances.geom)) {
                inst.constraints.push_back({std::min(a, b), std::max(a, b)});
            }
        }
    }
    return inst;
}

std::optional<double> max_visible_ratio(const Instance& inst, const ConeSystem& cones)
{
    if (!instance_problems(inst).empty() || !validate_general_position(inst.points, cones).empty()) {
        return std::nullopt;
    }
    ThetaGraph g;
    try {
        g = build_constrained_theta(inst, cones, BuildOptions{{}, false});
    } catch (const Error&) {
        return std::nullopt;
    }
    const Adjacency adj = adjacency(g);
    double best = 1.0;
    for (PointId u = 0; u < inst.size(); ++u) {
        const auto dist = dijkstra(adj, u);
        for (PointId w = u + 1; w < inst.size(); ++w) {
            if (visible(inst, u, w)) {
                best = std::max(best, dist[w] / distance(inst[u], inst[w]));
            }
        }
    }
    return best;
}

namespace {

struct Climber {
    const FamilySpec& spec;
    double bound;
    std::mt19937_64 rng;
    Instance current;
    double value = 1.0;
    std::size_t evaluations = 0;
    std::optional<Instance> certificate;

    double evaluate(const Instance& candidate, bool& valid)
    {
        ++evaluations;
        const auto r = max_visible_ratio(candidate, spec.cones);
        valid = r.has_value();
        if (valid && *r > bound + 1e-9 && !certificate) {
            certificate = candidate;
        }
        return r.value_or(0.0);
    }

    void offer(Instance candidate)
    {
        bool valid = false;
        const double v = evaluate(candidate, valid);
        if (valid && v > value) {
            value = v;
            current = std::move(candidate);
        }
    }

    double scale() const
    {
        double lo_x = current.points[0].x, hi_x = lo_x, lo_y = current.points[0].y, hi_y = lo_y;
        for (const Point p : current.points) {
            lo_x = std::min(lo_x, p.x);
            hi_x = std::max(hi_x, p.x);
            lo_y = std::min(lo_y, p.y);
            hi_y = std::max(hi_y, p.y);
        }
        return std::max(std::hypot(hi_x - lo_x, hi_y - lo_y), 1e-6);
    }

    void perturb_point()
    {
        std::uniform_int_distribution<PointId> pick(0, current.size() - 1);
        std::uniform_real_distribution<double> exponent(1.0, 5.0);
        std::normal_distribution<double> step(0.0, 1.0);
        Instance candidate = current;
        const PointId p = pick(rng);
        const double sigma = scale() * std::pow(10.0, -exponent(rng));
        candidate.points[p].x += sigma * step(rng);
        candidate.points[p].y += sigma * step(rng);
        offer(std::move(candidate));
    }
};

} // namespace

SearchResult adversarial_search(const FamilySpec& spec, std::uint64_t seed, std::size_t iterations,
                                const SearchOptions& options)
{
    const double bound = spanning_ratio_bound(spec);
    const std::size_t restarts = std::max<std::size_t>(1, options.restarts);
    const std::size_t points = std::max<std::size_t>(3, options.points);

    struct RestartResult {
        Instance best;
        double value = 0.0;
        std::size_t evaluations = 0;
        std::optional<Instance> certificate;
    };
    std::vector<RestartResult> results(restarts);

    parallel_for(restarts, [&](std::size_t r) {
        const std::uint64_t stream_seed = mix_seed(seed, r);
        Climber climber{spec, bound, std::mt19937_64(stream_seed), {}, 0.0, 0, std::nullopt};
        if (r == 0 && spec.x() == 2) {
            climber.current = tightness_fixture(spec, 1e-3);
        } else {
            RandomInstanceOptions gen;
            gen.points = points;
            gen.cone_counts = {spec.m()};
            climber.current = random_instance(stream_seed, gen);
        }
        bool valid = false;
        climber.value = climber.evaluate(climber.current, valid);
        const std::size_t steps = iterations / restarts + (r < iterations % restarts ? 1 : 0);
        for (std::size_t i = 0; i < steps; ++i) {
            climber.perturb_point();
        }
        results[r] = {climber.current, climber.value, climber.evaluations, climber.certificate};
    });

    SearchResult out;
    out.bound = bound;
    out.achieved = -1.0;
    for (RestartResult& r : results) {
        out.evaluations += r.evaluations;
        if (r.value > out.achieved) {
            out.achieved = r.value;
            out.best = r.best;
        }
        if (r.certificate && !out.certificate) {
            out.certificate = std::move(r.certificate);
        }
    }

    if (options.max_constraints > 0) {
        Climber climber{spec, bound, std::mt19937_64(mix_seed(seed, restarts)), out.best, out.achieved,
                        0, std::nullopt};
        std::uniform_real_distribution<double> move(0.0, 1.0);
        for (std::size_t i = 0; i < iterations / 2; ++i) {
            const double roll = move(climber.rng);
            if (roll < 0.35 && climber.current.constraints.size() < options.max_constraints) {
                Instance candidate = climber.current;
                if (add_random_constraint(candidate, climber.rng())) {
                    climber.offer(std::move(candidate));
                }
            } else if (roll < 0.5 && !climber.current.constraints.empty()) {
                Instance candidate = climber.current;
                std::uniform_int_distribution<std::size_t> pick(0, candidate.constraints.size() - 1);
                candidate.constraints.erase(candidate.constraints.begin() +
                                            static_cast<std::ptrdiff_t>(pick(climber.rng)));
                climber.offer(std::move(candidate));
            } else {
                climber.perturb_point();
            }
        }
        out.best = climber.current;
        out.achieved = climber.value;
        out.evaluations += climber.evaluations;
        if (climber.certificate && !out.certificate) {
            out.certificate = std::move(climber.certificate);
        }
    }
    return out;
}

std::optional<SpanningChain> spanning_chain(const Instance& inst, const ThetaGraph& g, const FamilySpec& spec,
                                            PointId u, PointId w)
{
    if (u == w || g.has_edge(u, w) || !visible(inst, u, w)) {
        return std::nullopt;
    }
    const ConeSystem& cones = spec.cones;
    const int cone = cone_of(inst[u], inst[w], cones);

    std::optional<PointId> v0;
    for (const Subcone& sub : subcones(inst, u, cones)) {
        if (sub.cone != cone) {
            continue;
        }
        const auto members = subcone_members(inst, u, sub, cones);
        if (std::find(members.begin(), members.end(), w) == members.end()) {
            continue;
        }
        std::optional<std::pair<double, PointId>> best;
        for (const PointId p : members) {
            if (!visible(inst, u, p)) {
                continue;
            }
            const std::pair key{dot(inst[p] - inst[u], cones.bisector(cone)), p};
            if (!best || key < *best) {
                best = key;
            }
        }
        if (best && best->second != w) {
            v0 = best->second;
            break;
        }
    }
    if (!v0) {
        return std::nullopt;
    }

    SpanningChain out;
    out.v0 = *v0;
    try {
        out.chain = convex_chain(inst, *v0, w, u);
    } catch (const PreconditionViolated&) {
        return std::nullopt;
    }

    const Point origin = inst[u];
    out.frame_points.reserve(inst.size());
    for (const Point p : inst.points) {
        out.frame_points.push_back(rotate(p, cone * cones.theta(), origin));
    }
    if (orientation(out.frame_points[u], out.frame_points[w], out.frame_points[*v0]) == Orientation::Clockwise) {
        for (Point& p : out.frame_points) {
            p.x = 2 * origin.x - p.x;
        }
    }
    const auto& vs = out.chain.vertices;
    for (std::size_t j = 1; j < vs.size(); ++j) {
        out.types.push_back(classify_configuration(out.frame_points[vs[j - 1]], out.frame_points[vs[j]], spec));
    }
    return out;
}

} // namespace theta
