#include "avdtc/graph.hpp"
#include "avdtc/generators.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

using namespace avdtc;

namespace {

Graph cycle(int n)
{
    return generate({GenKind::Cycle, n, 0, 3});
}

} // namespace

TEST_CASE("build_graph basics")
{
    Graph k2 = build_graph(2, {{0, 1}});
    REQUIRE(k2.n() == 2);
    REQUIRE(k2.m() == 1);
    REQUIRE(k2.max_degree() == 1);

    Graph c5 = build_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    REQUIRE(c5.m() == 5);
    REQUIRE(c5.max_degree() == 2);
    REQUIRE(c5.has_edge(4, 0));
    REQUIRE(!c5.has_edge(0, 2));
}

TEST_CASE("build_graph rejects bad input")
{
    auto code = [](auto fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::BadSpec;
    };
    REQUIRE(code([] { build_graph(3, {{0, 0}}); }) == ErrorCode::SelfLoop);
    REQUIRE(code([] { build_graph(3, {{0, 1}, {1, 0}}); }) == ErrorCode::DuplicateEdge);
    REQUIRE(code([] { build_graph(3, {{0, 3}}); }) == ErrorCode::VertexOutOfRange);
}

TEST_CASE("edge list round-trip is the identity up to ordering")
{
    std::mt19937_64 rng(7);
    for (int round = 0; round < 50; ++round) {
        Graph g = generate({GenKind::Random3d, 30, rng(), 3});
        std::set<VertexPair> in(g.edges().begin(), g.edges().end());
        Graph h = build_graph(g.n(), {in.begin(), in.end()});
        std::set<VertexPair> out(h.edges().begin(), h.edges().end());
        REQUIRE(in == out);
        for (int v = 0; v < g.n(); ++v)
            REQUIRE(g.degree(v) == h.degree(v));
    }
}

TEST_CASE("degeneracy of named graphs")
{
    Graph p3 = build_graph(3, {{0, 1}, {1, 2}});
    REQUIRE(degeneracy(p3).d == 1);
    REQUIRE(degeneracy(generate({GenKind::Complete, 4, 0, 3})).d == 3);
    REQUIRE(degeneracy(generate({GenKind::Complete, 5, 0, 3})).d == 4);
    REQUIRE(degeneracy(cycle(6)).d == 2);
    REQUIRE(degeneracy(build_graph(1, {})).d == 0);
}

TEST_CASE("degeneracy order witnesses the bound")
{
    std::mt19937_64 rng(99);
    for (int round = 0; round < 30; ++round) {
        Graph g = generate({GenKind::Random3d, 40, rng(), 3});
        auto res = degeneracy(g);
        REQUIRE(res.order.size() == static_cast<size_t>(g.n()));
        // Replay the order; every removed vertex must have residual degree <= d.
        std::vector<char> removed(static_cast<size_t>(g.n()), 0);
        for (int v : res.order) {
            int rd = 0;
            for (const Incidence& inc : g.incident(v))
                if (!removed[static_cast<size_t>(inc.to)])
                    ++rd;
            REQUIRE(rd <= res.d);
            removed[static_cast<size_t>(v)] = 1;
        }
    }
}

TEST_CASE("find_pivot on a star picks the center")
{
    Graph star = generate({GenKind::Star, 6, 0, 3});
    REQUIRE(find_pivot(star) == 0);
}

TEST_CASE("find_pivot on K4 with two pendants per vertex")
{
    // K4 on 0..3, each core vertex gets two private pendants: degree 5.
    std::vector<VertexPair> edges;
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v)
            edges.push_back({u, v});
    int next = 4;
    for (int u = 0; u < 4; ++u)
        for (int t = 0; t < 2; ++t)
            edges.push_back({u, next++});
    Graph g = build_graph(next, edges);
    for (int u = 0; u < 4; ++u)
        REQUIRE(g.degree(u) == 5);

    int u = find_pivot(g);
    REQUIRE(u == 0);
    // Independent confirmation by peeling: every core vertex has exactly 3
    // high neighbors, so any of them qualifies and the smallest id wins.
    auto part = degree_partition(g);
    REQUIRE(part.high == std::vector<int>{0, 1, 2, 3});
    for (int v : part.high)
        REQUIRE(part.high_neighbors[static_cast<size_t>(v)] == 3);
    REQUIRE(g.degree(u) >= 4);
    REQUIRE(part.high_neighbors[static_cast<size_t>(u)] <= 3);
}

TEST_CASE("find_pivot rejects subcubic graphs")
{
    try {
        find_pivot(cycle(5));
        FAIL("expected NoPivot");
    } catch (const Error& e) {
        REQUIRE(e.code() == ErrorCode::NoPivot);
    }
}

TEST_CASE("find_pivot output contract on random graphs")
{
    std::mt19937_64 rng(4242);
    int checked = 0;
    for (int round = 0; round < 60; ++round) {
        Graph g = generate({GenKind::Random3d, 50, rng(), 3});
        if (g.max_degree() <= 3)
            continue;
        int u = find_pivot(g);
        ++checked;
        REQUIRE(g.degree(u) >= 4);
        int high = 0;
        for (const Incidence& inc : g.incident(u))
            if (g.degree(inc.to) > 3)
                ++high;
        REQUIRE(high <= 3);
    }
    REQUIRE(checked > 20);
}

TEST_CASE("degree_partition splits at 3")
{
    Graph g = generate({GenKind::Wheel, 7, 0, 3});
    auto part = degree_partition(g);
    for (int v : part.low)
        REQUIRE(g.degree(v) <= 3);
    for (int v : part.high)
        REQUIRE(g.degree(v) > 3);
    REQUIRE(part.low.size() + part.high.size() == static_cast<size_t>(g.n()));
}

TEST_CASE("validate_support accepts and rejects")
{
    Graph c6 = cycle(6);
    validate_support(c6, Support{{{0, 3}}});

    auto code = [&](const Support& s) {
        try {
            validate_support(c6, s);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::BadSpec;
    };
    REQUIRE(code(Support{{{0, 1}}}) == ErrorCode::PairAdjacent);
    REQUIRE(code(Support{{{0, 3}, {3, 5}}}) == ErrorCode::PairsOverlap);

    Graph star = generate({GenKind::Star, 5, 0, 3});
    try {
        validate_support(star, Support{{{1, 2}}});
        FAIL("expected DegreeNotTwo");
    } catch (const Error& e) {
        REQUIRE(e.code() == ErrorCode::DegreeNotTwo);
    }
}
