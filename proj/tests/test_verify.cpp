#include "support.hpp"

#include "theta/errors.hpp"
#include "theta/verify.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <functional>
#include <random>

using namespace theta;

namespace {

Instance random_for(std::uint64_t seed, std::size_t points, std::size_t constraints)
{
    RandomInstanceOptions opts;
    opts.points = points;
    opts.constraints = constraints;
    return random_instance(seed, opts);
}

double brute_force_distance(const Adjacency& adj, PointId from, PointId to)
{
    double best = kUnreachable;
    std::vector<bool> used(adj.size(), false);
    std::function<void(PointId, double)> walk = [&](PointId at, double length) {
        if (at == to) {
            best = std::min(best, length);
            return;
        }
        used[at] = true;
        for (const auto& [next, weight] : adj[at]) {
            if (!used[next]) {
                walk(next, length + weight);
            }
        }
        used[at] = false;
    };
    walk(from, 0.0);
    return best;
}

} // namespace

TEST_CASE("shortest path examples")
{
    Instance inst;
    inst.points = {{0, 0}, {0.3, 1}};
    ThetaGraph single = build_constrained_theta(inst, ConeSystem(6));
    const auto d = shortest_paths(single, 0);
    CHECK(d[0] == 0.0);
    CHECK(d[1] == distance(inst[0], inst[1]));

    Adjacency path(3);
    path[0] = {{1, 1.5}};
    path[1] = {{0, 1.5}, {2, 2.25}};
    path[2] = {{1, 2.25}};
    const auto p = dijkstra(path, 0);
    CHECK(p[2] == 3.75);

    Adjacency split(3);
    split[0] = {{1, 1.0}};
    split[1] = {{0, 1.0}};
    CHECK(dijkstra(split, 0)[2] == kUnreachable);
}

TEST_CASE("dijkstra matches exhaustive path enumeration")
{
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> weight(0.1, 3.0);
    std::bernoulli_distribution present(0.35);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 10;
        Adjacency adj(n);
        for (PointId a = 0; a < n; ++a) {
            for (PointId b = a + 1; b < n; ++b) {
                if (present(rng)) {
                    const double w = weight(rng);
                    adj[a].emplace_back(b, w);
                    adj[b].emplace_back(a, w);
                }
            }
        }
        const auto dist = dijkstra(adj, 0);
        for (PointId t = 0; t < n; ++t) {
            const double expected = brute_force_distance(adj, 0, t);
            if (expected == kUnreachable) {
                CHECK(dist[t] == kUnreachable);
            } else {
                CHECK(dist[t] == doctest::Approx(expected).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("ratio report on two points")
{
    Instance inst;
    inst.points = {{0, 0}, {0.3, 1}};
    const RatioReport r = pair_ratio_report(inst, ConeSystem(6));
    REQUIRE(r.pairs.size() == 1);
    CHECK(r.pairs[0].ratio == 1.0);
    CHECK_FALSE(r.pairs[0].violation);
    CHECK(r.max_ratio == 1.0);
    CHECK(r.clean());
    CHECK(r.argmax == std::pair<PointId, PointId>{0, 1});
}

TEST_CASE("tightness fixture")
{
    const double eps = 1e-3;
    SUBCASE("six cones")
    {
        const FamilySpec spec = family_of(6);
        const Instance inst = tightness_fixture(spec, eps);
        CHECK(inst.size() == 4);
        CHECK(inst.constraints.empty());
        const ThetaGraph g = build_constrained_theta(inst, spec.cones);
        CHECK_FALSE(g.has_edge(0, 1));
        const RatioReport r = pair_ratio_report(inst, spec.cones, g);
        CHECK(r.clean());
        CHECK(r.max_ratio >= 2 - 10 * eps);
        CHECK(r.max_ratio <= 2.0);
        CHECK(r.argmax == std::pair<PointId, PointId>{0, 1});
        CHECK(shortest_paths(g, 0)[1] ==
              doctest::Approx(distance(inst[0], inst[2]) + distance(inst[2], inst[1])).epsilon(1e-12));
    }
    SUBCASE("ten cones")
    {
        const FamilySpec spec = family_of(10);
        const RatioReport r = pair_ratio_report(tightness_fixture(spec, eps), spec.cones);
        CHECK(r.clean());
        CHECK(r.max_ratio >= 1 + 2 * std::sin(std::numbers::pi / 10) - 10 * eps);
    }
    SUBCASE("coarse eps")
    {
        for (const int m : {6, 10}) {
            const FamilySpec spec = family_of(m);
            const RatioReport r = pair_ratio_report(tightness_fixture(spec, 0.3), spec.cones);
            CHECK(r.clean());
            CHECK(r.max_ratio > 1.0);
            CHECK(r.max_ratio < spanning_ratio_bound(spec));
        }
    }
    SUBCASE("ratio approaches the bound as eps shrinks")
    {
        const FamilySpec spec = family_of(6);
        double previous = 0.0;
        for (const double e : {0.1, 0.01, 1e-3, 1e-4}) {
            const double ratio = pair_ratio_report(tightness_fixture(spec, e), spec.cones).max_ratio;
            CHECK(ratio > previous);
            previous = ratio;
        }
        CHECK(previous > 2 - 1e-3);
    }
    SUBCASE("preconditions")
    {
        CHECK_THROWS_AS(tightness_fixture(family_of(7), eps), PreconditionViolated);
        CHECK_THROWS_AS(tightness_fixture(family_of(8), eps), PreconditionViolated);
        CHECK_THROWS_AS(tightness_fixture(family_of(6), 0.0), PreconditionViolated);
        CHECK_THROWS_AS(tightness_fixture(family_of(6), 1.0), PreconditionViolated);
    }
}

TEST_CASE("report invariants on random instances")
{
    for (int m = 6; m <= 13; ++m) {
        const ConeSystem cones(m);
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            const Instance inst = random_for(seed * 17 + static_cast<std::uint64_t>(m), 40, 15);
            const RatioReport r = pair_ratio_report(inst, cones);
            CHECK(r.clean());
            CHECK(r.max_ratio <= r.bound * (1 + kViolationSlack));
            CHECK(r.max_ratio <= r.max_bound * (1 + kViolationSlack));
            CHECK(r.max_bound <= r.bound * (1 + 1e-12));
            for (const PairRecord& p : r.pairs) {
                CHECK(p.delta >= p.euclid * (1 - 1e-12));
                CHECK(p.violation == (p.ratio > p.bound * (1 + kViolationSlack)));
                CHECK(visible(inst, p.u, p.w));
            }
            const RatioReport again = pair_ratio_report(inst, cones);
            REQUIRE(again.pairs.size() == r.pairs.size());
            for (std::size_t i = 0; i < r.pairs.size(); ++i) {
                CHECK(again.pairs[i].delta == r.pairs[i].delta);
                CHECK(again.pairs[i].bound == r.pairs[i].bound);
            }
            CHECK(again.argmax == r.argmax);
        }
    }
}

TEST_CASE("random instance generator")
{
    RandomInstanceOptions opts;
    opts.points = 50;
    opts.constraints = 20;
    const Instance a = random_instance(12, opts);
    const Instance b = random_instance(12, opts);
    CHECK(a.points == b.points);
    CHECK(a.constraints == b.constraints);
    CHECK(a.size() == 50);
    CHECK(a.constraints.size() <= 20);
    CHECK(a.constraints.size() >= 10);
    CHECK(instance_problems(a).empty());
    for (int m = 6; m <= 13; ++m) {
        CHECK(validate_general_position(a.points, ConeSystem(m)).empty());
    }
    for (const Point p : a.points) {
        CHECK(p.x > -1e-5);
        CHECK(p.x < 1 + 1e-5);
        CHECK(p.y > -1e-5);
        CHECK(p.y < 1 + 1e-5);
    }
    CHECK(random_instance(13, opts).points != a.points);

    Instance grown = a;
    REQUIRE(add_random_constraint(grown, 5));
    CHECK(grown.constraints.size() == a.constraints.size() + 1);
    CHECK(instance_problems(grown).empty());
}

TEST_CASE("max visible ratio rejects degenerate instances")
{
    Instance flat;
    flat.points = {{0, 0}, {1, 0}};
    CHECK_FALSE(max_visible_ratio(flat, ConeSystem(6)).has_value());
    const FamilySpec spec = family_of(6);
    const Instance fixture = tightness_fixture(spec, 1e-3);
    CHECK(*max_visible_ratio(fixture, spec.cones) == pair_ratio_report(fixture, spec.cones).max_ratio);
}

TEST_CASE("adversarial search")
{
    SUBCASE("six cones keep the fixture")
    {
        const FamilySpec spec = family_of(6);
        const SearchResult r = adversarial_search(spec, 1, 10000);
        CHECK(r.achieved >= 1.9);
        CHECK(r.achieved <= spanning_ratio_bound(spec) + 1e-9);
        CHECK_FALSE(r.certificate.has_value());
        CHECK(*max_visible_ratio(r.best, spec.cones) == r.achieved);
    }
    SUBCASE("every cone count stays below its bound")
    {
        for (int m = 6; m <= 13; ++m) {
            const FamilySpec spec = family_of(m);
            const SearchResult r = adversarial_search(spec, 3, 400);
            CHECK(r.achieved >= 1.0);
            CHECK(r.achieved <= spanning_ratio_bound(spec) + 1e-9);
            CHECK_FALSE(r.certificate.has_value());
        }
    }
    SUBCASE("constraints never lower the achieved ratio")
    {
        for (int m = 6; m <= 9; ++m) {
            const FamilySpec spec = family_of(m);
            for (std::uint64_t seed = 1; seed <= 3; ++seed) {
                const SearchResult plain = adversarial_search(spec, seed, 300, {6, 0, 4});
                const SearchResult constrained = adversarial_search(spec, seed, 300, {6, 3, 4});
                CHECK(constrained.achieved >= plain.achieved);
                CHECK(constrained.achieved <= spanning_ratio_bound(spec) + 1e-9);
                CHECK(instance_problems(constrained.best).empty());
            }
        }
    }
    SUBCASE("deterministic across thread counts")
    {
        const FamilySpec spec = family_of(7);
        ::setenv("THETA_SPANNER_THREADS", "1", 1);
        const SearchResult a = adversarial_search(spec, 9, 200, {6, 2, 4});
        ::setenv("THETA_SPANNER_THREADS", "3", 1);
        const SearchResult b = adversarial_search(spec, 9, 200, {6, 2, 4});
        ::unsetenv("THETA_SPANNER_THREADS");
        CHECK(a.achieved == b.achieved);
        CHECK(a.best.points == b.best.points);
        CHECK(a.best.constraints == b.best.constraints);
        CHECK(a.evaluations == b.evaluations);
    }
}

TEST_CASE("spanning chains")
{
    std::size_t chains = 0;
    for (int m = 6; m <= 13; ++m) {
        const FamilySpec spec = family_of(m);
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            const Instance inst = random_for(seed * 101 + static_cast<std::uint64_t>(m), 30, 10);
            const ThetaGraph g = build_constrained_theta(inst, spec.cones);
            for (PointId u = 0; u < inst.size(); ++u) {
                for (PointId w = 0; w < inst.size(); ++w) {
                    const auto sc = spanning_chain(inst, g, spec, u, w);
                    if (!sc) {
                        continue;
                    }
                    ++chains;
                    CHECK(verify_chain(inst, sc->chain));
                    const auto& vs = sc->chain.vertices;
                    REQUIRE(vs.front() == sc->v0);
                    REQUIRE(vs.back() == w);
                    const auto& fp = sc->frame_points;
                    CHECK(cone_of(fp[u], fp[w], spec.cones) == 0);
                    CHECK(orientation(fp[u], fp[w], fp[sc->v0]) == Orientation::CounterClockwise);
                    for (std::size_t j = 1; j < vs.size(); ++j) {
                        CHECK(fp[vs[j]].y > fp[sc->v0].y);
                    }
                    for (std::size_t j = 1; j < sc->types.size(); ++j) {
                        CHECK(static_cast<int>(sc->types[j - 1]) <= static_cast<int>(sc->types[j]));
                    }
                }
            }
        }
    }
    CHECK(chains > 100);
}
