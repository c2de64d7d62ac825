#ifndef AVDTC_GRAPH_HPP
#define AVDTC_GRAPH_HPP

#include "avdtc/errors.hpp"

#include <algorithm>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace avdtc {

// Unordered vertex pair, stored normalized as (min, max).
using VertexPair = std::pair<int, int>;

inline VertexPair make_pair_norm(int u, int v)
{
    return u < v ? VertexPair{u, v} : VertexPair{v, u};
}

struct Incidence {
    int to;   // neighbor vertex
    int edge; // edge id
};

// Immutable simple undirected graph on vertices 0..n-1. Adjacency lists are
// sorted by neighbor id; edges keep their construction order and ids.
class Graph {
public:
    Graph() = default;

    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }
    int max_degree() const { return max_degree_; }

    int degree(int v) const { return static_cast<int>(adj_[static_cast<size_t>(v)].size()); }

    std::span<const Incidence> incident(int v) const
    {
        const auto& a = adj_[static_cast<size_t>(v)];
        return {a.data(), a.size()};
    }

    template <class Fn> void for_incident(int v, Fn&& fn) const
    {
        for (const Incidence& inc : adj_[static_cast<size_t>(v)])
            fn(inc.to, inc.edge);
    }

    template <class Fn> void for_edges(Fn&& fn) const
    {
        for (int e = 0; e < m(); ++e)
            fn(e, edges_[static_cast<size_t>(e)].first, edges_[static_cast<size_t>(e)].second);
    }

    const std::vector<VertexPair>& edges() const { return edges_; }

    VertexPair edge(int e) const { return edges_[static_cast<size_t>(e)]; }

    bool has_edge(int u, int v) const { return edge_index(u, v) >= 0; }

    // Edge id of uv, or -1 when absent.
    int edge_index(int u, int v) const
    {
        if (u == v)
            return -1;
        const auto& a = adj_[static_cast<size_t>(u)];
        auto it = std::lower_bound(a.begin(), a.end(), v,
            [](const Incidence& inc, int w) { return inc.to < w; });
        if (it != a.end() && it->to == v)
            return it->edge;
        return -1;
    }

    friend Graph build_graph(int n, const std::vector<VertexPair>& edge_list);

private:
    int n_ = 0;
    int max_degree_ = 0;
    std::vector<VertexPair> edges_;
    std::vector<std::vector<Incidence>> adj_;
};

inline Graph build_graph(int n, const std::vector<VertexPair>& edge_list)
{
    if (n < 0)
        fail(ErrorCode::BadSpec, "negative vertex count");
    Graph g;
    g.n_ = n;
    g.adj_.assign(static_cast<size_t>(n), {});
    g.edges_.reserve(edge_list.size());
    std::set<VertexPair> seen;
    for (const auto& [a, b] : edge_list) {
        if (a < 0 || a >= n || b < 0 || b >= n)
            fail(ErrorCode::VertexOutOfRange,
                "edge (" + std::to_string(a) + "," + std::to_string(b) + ") with n=" + std::to_string(n));
        if (a == b)
            fail(ErrorCode::SelfLoop, "vertex " + std::to_string(a));
        VertexPair e = make_pair_norm(a, b);
        if (!seen.insert(e).second)
            fail(ErrorCode::DuplicateEdge, "edge (" + std::to_string(e.first) + "," + std::to_string(e.second) + ")");
        int id = static_cast<int>(g.edges_.size());
        g.edges_.push_back(e);
        g.adj_[static_cast<size_t>(e.first)].push_back({e.second, id});
        g.adj_[static_cast<size_t>(e.second)].push_back({e.first, id});
    }
    for (auto& a : g.adj_) {
        std::sort(a.begin(), a.end(), [](const Incidence& x, const Incidence& y) { return x.to < y.to; });
        g.max_degree_ = std::max(g.max_degree_, static_cast<int>(a.size()));
    }
    return g;
}

// Split of V(G) at degree threshold 3, with per-vertex counts of neighbors
// on each side.
struct DegreePartition {
    std::vector<int> low;            // V<=3(G), ascending
    std::vector<int> high;           // V>3(G), ascending
    std::vector<int> high_neighbors; // |N>3(u)| per vertex
    std::vector<int> low_neighbors;  // |N<=3(u)| per vertex
};

inline DegreePartition degree_partition(const Graph& g)
{
    DegreePartition p;
    p.high_neighbors.assign(static_cast<size_t>(g.n()), 0);
    p.low_neighbors.assign(static_cast<size_t>(g.n()), 0);
    for (int v = 0; v < g.n(); ++v)
        (g.degree(v) <= 3 ? p.low : p.high).push_back(v);
    for (int v = 0; v < g.n(); ++v)
        for (const Incidence& inc : g.incident(v))
            ++(g.degree(inc.to) > 3 ? p.high_neighbors : p.low_neighbors)[static_cast<size_t>(v)];
    return p;
}

struct DegeneracyResult {
    int d = 0;                // smallest s admitting an s-peeling
    std::vector<int> order;   // removal sequence witnessing it
};

// Iterative minimum-degree peeling; ties break on smallest vertex id.
inline DegeneracyResult degeneracy(const Graph& g)
{
    DegeneracyResult res;
    res.order.reserve(static_cast<size_t>(g.n()));
    std::vector<int> deg(static_cast<size_t>(g.n()));
    std::set<std::pair<int, int>> queue; // (degree, vertex)
    for (int v = 0; v < g.n(); ++v) {
        deg[static_cast<size_t>(v)] = g.degree(v);
        queue.insert({deg[static_cast<size_t>(v)], v});
    }
    std::vector<char> removed(static_cast<size_t>(g.n()), 0);
    while (!queue.empty()) {
        auto [d, v] = *queue.begin();
        queue.erase(queue.begin());
        removed[static_cast<size_t>(v)] = 1;
        res.order.push_back(v);
        res.d = std::max(res.d, d);
        for (const Incidence& inc : g.incident(v)) {
            if (removed[static_cast<size_t>(inc.to)])
                continue;
            queue.erase({deg[static_cast<size_t>(inc.to)], inc.to});
            --deg[static_cast<size_t>(inc.to)];
            queue.insert({deg[static_cast<size_t>(inc.to)], inc.to});
        }
    }
    return res;
}

// 3-pivot discovery per the peeling argument: remove V<=3(G) and take the
// smallest-id minimum-degree vertex of the residual graph. The result has
// deg_G(u) >= 4 and |N>3(u)| <= 3.
template <class View> int find_pivot_view(const View& g)
{
    int best = -1;
    int best_deg = -1;
    for (int v = 0; v < g.n(); ++v) {
        if (g.degree(v) <= 3)
            continue;
        int rd = 0;
        g.for_incident(v, [&](int w, int) {
            if (g.degree(w) > 3)
                ++rd;
        });
        if (best == -1 || rd < best_deg) {
            best = v;
            best_deg = rd;
        }
    }
    if (best == -1)
        fail(ErrorCode::NoPivot, "max degree <= 3");
    if (best_deg > 3)
        fail(ErrorCode::NoPivot, "graph is not 3-degenerate");
    return best;
}

inline int find_pivot(const Graph& g)
{
    return find_pivot_view(g);
}

// Pairwise disjoint pairs of nonadjacent degree-2 vertices.
struct Support {
    std::vector<VertexPair> pairs;

    bool empty() const { return pairs.empty(); }
};

inline void validate_support(const Graph& g, const Support& s)
{
    std::vector<char> used(static_cast<size_t>(g.n()), 0);
    for (const auto& [u, v] : s.pairs) {
        if (u < 0 || u >= g.n() || v < 0 || v >= g.n())
            fail(ErrorCode::VertexOutOfRange, "support pair (" + std::to_string(u) + "," + std::to_string(v) + ")");
        if (g.degree(u) != 2 || g.degree(v) != 2)
            fail(ErrorCode::DegreeNotTwo,
                "support pair (" + std::to_string(u) + "," + std::to_string(v) + ") has a member of degree != 2");
        if (u == v || g.has_edge(u, v))
            fail(ErrorCode::PairAdjacent,
                "support pair (" + std::to_string(u) + "," + std::to_string(v) + ") is adjacent");
        if (used[static_cast<size_t>(u)] || used[static_cast<size_t>(v)])
            fail(ErrorCode::PairsOverlap,
                "support pair (" + std::to_string(u) + "," + std::to_string(v) + ") overlaps another pair");
        used[static_cast<size_t>(u)] = used[static_cast<size_t>(v)] = 1;
    }
}

} // namespace avdtc

#endif
