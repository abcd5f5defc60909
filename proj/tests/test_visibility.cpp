#include "support.hpp"

#include "theta/errors.hpp"
#include "theta/verify.hpp"
#include "theta/visibility.hpp"

#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>

using namespace theta;

TEST_CASE("visibility predicate")
{
    Instance inst;
    inst.points = {{0, 0}, {2, 0}, {1, -1}, {1, 1}};
    CHECK(visible(inst, 0, 1));
    inst.constraints = {{2, 3}};
    CHECK_FALSE(visible(inst, 0, 1));
    CHECK(visible(inst, 0, 2));
    CHECK(visible(inst, 2, 3));

    SUBCASE("a constraint sees its own endpoints despite a nearby endpoint")
    {
        Instance c;
        c.points = {{0, 0}, {2, 0.01}, {1, 0.004}, {1.2, -2}};
        c.constraints = {{0, 1}, {2, 3}};
        CHECK(visible(c, 0, 1));
        CHECK(visible(c, 1, 0));
    }
}

TEST_CASE("visibility graph examples")
{
    SUBCASE("no constraints gives the complete graph")
    {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            RandomInstanceOptions opts;
            opts.points = 2 + seed * 2;
            opts.cone_counts = {6};
            const Instance inst = random_instance(seed, opts);
            const auto vis = visibility_graph(inst);
            const std::size_t n = inst.size();
            CHECK(vis.pair_count() == n * (n - 1) / 2);
        }
    }
    SUBCASE("triangle with one constraint stays complete")
    {
        Instance inst;
        inst.points = {{0, 0}, {1, 0.1}, {0.3, 1}};
        inst.constraints = {{0, 1}};
        const auto vis = visibility_graph(inst);
        CHECK(vis.pair_count() == 3);
        for (PointId a = 0; a < 3; ++a) {
            for (PointId b = 0; b < 3; ++b) {
                CHECK(vis.related(a, b) == (a != b));
            }
        }
    }
    SUBCASE("convex quadrilateral with one diagonal")
    {
        Instance inst;
        inst.points = {{0, 0}, {1, 0.1}, {1.1, 1}, {0.1, 0.9}};
        inst.constraints = {{0, 2}};
        const auto vis = visibility_graph(inst);
        CHECK(vis.related(0, 2));
        CHECK_FALSE(vis.related(1, 3));
        CHECK(vis.pair_count() == 5);
    }
    SUBCASE("crossing constraints are rejected")
    {
        Instance inst;
        inst.points = {{0, 0}, {1, 0.1}, {1.1, 1}, {0.1, 0.9}};
        inst.constraints = {{0, 2}, {1, 3}};
        CHECK_THROWS_AS(visibility_graph(inst), InvalidInstance);
    }
}

TEST_CASE("adding a constraint never adds a visible pair")
{
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        RandomInstanceOptions opts;
        opts.points = 25;
        opts.constraints = 6;
        opts.cone_counts = {6};
        const Instance base = random_instance(seed, opts);
        Instance more = base;
        if (!add_random_constraint(more, seed * 31 + 7)) {
            continue;
        }
        const Segment added = more.constraints.back();
        const auto before = visibility_graph(base);
        const auto after = visibility_graph(more);
        CHECK(after.related(added.a, added.b));
        for (PointId a = 0; a < base.size(); ++a) {
            for (PointId b = 0; b < base.size(); ++b) {
                if (after.related(a, b)) {
                    CHECK(before.related(a, b));
                }
            }
        }
    }
}

namespace {

/// u = (0,0), v = (4,0), w = (2,4); interior points 3 and 4 each sit on a
/// constraint hanging below uv; point 7 lies under the p3-p4 edge.
Instance staircase()
{
    Instance inst;
    inst.points = {{0, 0}, {4, 0.01}, {2, 4}, {1.2, 0.5}, {2.8, 0.6}, {1.3, -1}, {2.7, -1.1}, {2.05, 0.3}};
    inst.constraints = {{3, 5}, {4, 6}};
    return inst;
}

/// Every simple sequence u, p_1, ..., v over points strictly inside the
/// triangle (at most `max_inner` of them) that passes verify_chain.
std::vector<std::vector<PointId>> enumerate_chains(const Instance& inst, PointId u, PointId v, PointId w,
                                                   std::size_t max_inner)
{
    std::vector<PointId> inner;
    for (PointId p = 0; p < inst.size(); ++p) {
        if (p == u || p == v || p == w) {
            continue;
        }
        const auto o = orientation(inst[u], inst[v], inst[w]);
        if (orientation(inst[u], inst[v], inst[p]) == o && orientation(inst[v], inst[w], inst[p]) == o &&
            orientation(inst[w], inst[u], inst[p]) == o) {
            inner.push_back(p);
        }
    }
    std::vector<std::vector<PointId>> found;
    std::vector<PointId> seq{u};
    std::vector<bool> used(inst.size(), false);
    std::function<void()> grow = [&] {
        seq.push_back(v);
        if (verify_chain(inst, ConvexChain{seq, {u, v, w}})) {
            found.push_back(seq);
        }
        seq.pop_back();
        if (seq.size() - 1 >= max_inner) {
            return;
        }
        for (const PointId p : inner) {
            if (!used[p]) {
                used[p] = true;
                seq.push_back(p);
                grow();
                seq.pop_back();
                used[p] = false;
            }
        }
    };
    grow();
    return found;
}

} // namespace

TEST_CASE("convex chain examples")
{
    SUBCASE("empty triangle gives the direct edge")
    {
        Instance inst;
        inst.points = {{0, 0}, {2, 0.1}, {1, 2}, {5, 5}};
        const auto chain = convex_chain(inst, 0, 1, 2);
        CHECK(chain.vertices == std::vector<PointId>{0, 1});
        CHECK(verify_chain(inst, chain));
    }
    SUBCASE("single blocking constraint endpoint")
    {
        Instance inst;
        inst.points = {{0, 0}, {2, 0.1}, {1, 2}, {1.1, 0.5}, {0.9, -1}};
        inst.constraints = {{3, 4}};
        const auto chain = convex_chain(inst, 0, 1, 2);
        CHECK(chain.vertices == std::vector<PointId>{0, 3, 1});
        CHECK(verify_chain(inst, chain));
        CHECK(enumerate_chains(inst, 0, 1, 2, 3) == std::vector<std::vector<PointId>>{{0, 3, 1}});
    }
    SUBCASE("staircase of two blockers")
    {
        const Instance inst = staircase();
        const auto chain = convex_chain(inst, 0, 1, 2);
        CHECK(chain.vertices == std::vector<PointId>{0, 3, 4, 1});
        CHECK(verify_chain(inst, chain));
        const auto all = enumerate_chains(inst, 0, 1, 2, 3);
        CHECK(all == std::vector<std::vector<PointId>>{{0, 3, 4, 1}});
        // Orientation along the chain is uniform.
        const auto& vs = chain.vertices;
        for (std::size_t i = 0; i + 2 < vs.size(); ++i) {
            CHECK(orientation(inst[vs[i]], inst[vs[i + 1]], inst[vs[i + 2]]) == Orientation::Clockwise);
        }
    }
}

TEST_CASE("verify_chain rejects broken chains")
{
    const Instance inst = staircase();
    SUBCASE("direct edge across a constraint")
    {
        CHECK_FALSE(verify_chain(inst, ConvexChain{{0, 1}, {0, 1, 2}}));
    }
    SUBCASE("reflex turn toward w")
    {
        CHECK_FALSE(verify_chain(inst, ConvexChain{{0, 3, 7, 4, 1}, {0, 1, 2}}));
    }
    SUBCASE("wrong endpoints, repeats and w on the chain")
    {
        CHECK_FALSE(verify_chain(inst, ConvexChain{{3, 4, 1}, {0, 1, 2}}));
        CHECK_FALSE(verify_chain(inst, ConvexChain{{0, 3, 3, 4, 1}, {0, 1, 2}}));
        CHECK_FALSE(verify_chain(inst, ConvexChain{{0, 2, 1}, {0, 1, 2}}));
    }
    SUBCASE("point left inside the pocket")
    {
        Instance extra = inst;
        extra.points.push_back({2.0, 1.0});
        CHECK_FALSE(verify_chain(extra, ConvexChain{{0, 3, 4, 1}, {0, 1, 2}}));
        CHECK(verify_chain(extra, convex_chain(extra, 0, 1, 2)));
    }
    SUBCASE("constraint through the pocket without a vertex inside")
    {
        Instance below = inst;
        below.points.push_back({2.0, -0.5});
        below.constraints.push_back({7, 8});
        CHECK(verify_chain(below, ConvexChain{{0, 3, 4, 1}, {0, 1, 2}}));

        Instance across = inst;
        across.points.push_back({0.5, 1.5});
        across.points.push_back({3.5, 1.6});
        across.constraints.push_back({8, 9});
        CHECK_FALSE(verify_chain(across, ConvexChain{{0, 3, 4, 1}, {0, 1, 2}}));
    }
}

TEST_CASE("convex chain preconditions")
{
    Instance inst = staircase();
    SUBCASE("collinear frame")
    {
        inst.points.push_back({8, 0.02});
        CHECK_THROWS_AS(convex_chain(inst, 0, 1, 8), PreconditionViolated);
    }
    SUBCASE("uw blocked")
    {
        inst.points.push_back({0.5, 2.5});
        inst.points.push_back({1.5, 1.2});
        inst.constraints.push_back({8, 9});
        CHECK_THROWS_AS(convex_chain(inst, 0, 1, 2), PreconditionViolated);
    }
    SUBCASE("constraint from w into the triangle")
    {
        inst.points.push_back({2.1, 1.5});
        inst.constraints.push_back({2, 8});
        CHECK_THROWS_AS(convex_chain(inst, 0, 1, 2), PreconditionViolated);
    }
    SUBCASE("repeated ids")
    {
        CHECK_THROWS_AS(convex_chain(inst, 0, 0, 2), PreconditionViolated);
    }
}

TEST_CASE("random chains pass verification and match the enumeration oracle")
{
    std::mt19937_64 rng(99);
    std::size_t checked = 0;
    std::size_t enumerated = 0;
    for (std::uint64_t seed = 1; checked < 300; ++seed) {
        RandomInstanceOptions opts;
        opts.points = 12;
        opts.constraints = 4;
        opts.cone_counts = {6};
        const Instance inst = random_instance(seed, opts);
        std::uniform_int_distribution<PointId> pick(0, inst.size() - 1);
        for (int attempt = 0; attempt < 20; ++attempt) {
            const PointId u = pick(rng), v = pick(rng), w = pick(rng);
            ConvexChain chain;
            try {
                chain = convex_chain(inst, u, v, w);
            } catch (const PreconditionViolated&) {
                continue;
            }
            ++checked;
            CHECK(verify_chain(inst, chain));
            if (chain.vertices.size() <= 5) {
                const auto all = enumerate_chains(inst, u, v, w, 4);
                if (all.size() == 1) {
                    CHECK(all.front() == chain.vertices);
                    ++enumerated;
                } else {
                    // More than four interior points can make the oracle incomplete only
                    // when the true chain is longer than the enumeration bound.
                    CHECK(std::find(all.begin(), all.end(), chain.vertices) != all.end());
                }
            }
        }
    }
    CHECK(enumerated > 100);
}
