#ifndef AVDTC_ORACLE_HPP
#define AVDTC_ORACLE_HPP

#include "avdtc/coloring.hpp"
#include "avdtc/errors.hpp"
#include "avdtc/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

namespace avdtc {

struct OracleResult {
    std::optional<int> min_colors;         // empty when the limit was exceeded
    std::optional<PartialColoring> witness;
    std::uint64_t nodes_explored = 0;
};

namespace oracle_detail {

// Backtracking over a fixed item order: vertices by id, then edges by id.
// Symmetry breaking pins item 0 to color 1 and item 1 to colors <= 2.
// Properness is enforced per assignment; the palette condition for an edge
// fires once the last element of the two closed stars is assigned.
class Search {
public:
    Search(const Graph& g, int colors)
        : g_(g)
        , colors_(colors)
        , items_(static_cast<size_t>(g.n() + g.m()), 0)
    {
        const int n = g.n();
        // Earlier items with which each item must differ.
        distinct_.resize(items_.size());
        for (int e = 0; e < g.m(); ++e) {
            auto [u, v] = g.edge(e);
            distinct_[static_cast<size_t>(v)].push_back(u); // vertex/vertex
            distinct_[static_cast<size_t>(n + e)].push_back(u);
            distinct_[static_cast<size_t>(n + e)].push_back(v);
        }
        for (int v = 0; v < n; ++v) {
            std::vector<int> es;
            for (const Incidence& inc : g.incident(v))
                es.push_back(inc.edge);
            std::sort(es.begin(), es.end());
            for (size_t i = 0; i < es.size(); ++i)
                for (size_t j = i + 1; j < es.size(); ++j)
                    distinct_[static_cast<size_t>(n + es[j])].push_back(n + es[i]);
        }
        // Item index at which the palette check of each edge can run.
        checks_at_.resize(items_.size());
        for (int e = 0; e < g.m(); ++e) {
            auto [u, v] = g.edge(e);
            if (g.degree(u) != g.degree(v))
                continue; // full palettes of unequal size always differ
            int last = std::max(u, v);
            for (const Incidence& inc : g.incident(u))
                last = std::max(last, n + inc.edge);
            for (const Incidence& inc : g.incident(v))
                last = std::max(last, n + inc.edge);
            checks_at_[static_cast<size_t>(last)].push_back(e);
        }
    }

    bool run(std::uint64_t& nodes)
    {
        bool ok = place(0, nodes);
        return ok;
    }

    const std::vector<int>& items() const { return items_; }

private:
    bool place(size_t idx, std::uint64_t& nodes)
    {
        if (idx == items_.size())
            return true;
        int hi = colors_;
        if (idx == 0)
            hi = std::min(hi, 1);
        else if (idx == 1)
            hi = std::min(hi, 2);
        for (int c = 1; c <= hi; ++c) {
            ++nodes;
            bool clash = false;
            for (int other : distinct_[idx])
                if (items_[static_cast<size_t>(other)] == c) {
                    clash = true;
                    break;
                }
            if (clash)
                continue;
            items_[idx] = c;
            if (palettes_ok(idx) && place(idx + 1, nodes))
                return true;
            items_[idx] = 0;
        }
        return false;
    }

    bool palettes_ok(size_t idx) const
    {
        for (int e : checks_at_[idx]) {
            auto [u, v] = g_.edge(e);
            if (closed_star(u) == closed_star(v))
                return false;
        }
        return true;
    }

    std::set<int> closed_star(int v) const
    {
        std::set<int> s;
        s.insert(items_[static_cast<size_t>(v)]);
        for (const Incidence& inc : g_.incident(v))
            s.insert(items_[static_cast<size_t>(g_.n() + inc.edge)]);
        return s;
    }

    const Graph& g_;
    int colors_;
    std::vector<int> items_;
    std::vector<std::vector<int>> distinct_;
    std::vector<std::vector<int>> checks_at_;
};

} // namespace oracle_detail

// Smallest c <= limit admitting an AVD total coloring with colors in [c],
// found exhaustively. Desk scale only.
inline OracleResult exact_min_avd(const Graph& g, int limit)
{
    if (g.n() + g.m() > 40)
        fail(ErrorCode::TooLarge, "oracle accepts |V|+|E| <= 40");
    if (limit > 12)
        fail(ErrorCode::TooLarge, "oracle accepts limit <= 12");
    OracleResult res;
    if (g.n() == 0) {
        res.min_colors = 0;
        res.witness = PartialColoring(1, 0, 0);
        return res;
    }
    for (int c = 1; c <= limit; ++c) {
        oracle_detail::Search search(g, c);
        if (search.run(res.nodes_explored)) {
            res.min_colors = c;
            PartialColoring col(c, g.n(), g.m());
            for (int v = 0; v < g.n(); ++v)
                col.set_vertex(v, search.items()[static_cast<size_t>(v)]);
            for (int e = 0; e < g.m(); ++e)
                col.set_edge(e, search.items()[static_cast<size_t>(g.n() + e)]);
            res.witness = std::move(col);
            return res;
        }
    }
    return res;
}

// All labeled graphs on n <= 5 vertices, by edge-subset bitmask ascending.
// Bit i of the mask is the i-th pair in lexicographic (u,v) order.
inline std::vector<Graph> enumerate_small_graphs(int n)
{
    if (n < 0 || n > 5)
        fail(ErrorCode::TooLarge, "enumeration accepts n <= 5");
    std::vector<VertexPair> all_pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            all_pairs.push_back({u, v});
    std::vector<Graph> out;
    out.reserve(size_t{1} << all_pairs.size());
    for (std::uint32_t mask = 0; mask < (1u << all_pairs.size()); ++mask) {
        std::vector<VertexPair> edges;
        for (size_t i = 0; i < all_pairs.size(); ++i)
            if (mask & (1u << i))
                edges.push_back(all_pairs[i]);
        out.push_back(build_graph(n, edges));
    }
    return out;
}

// Independent full-coloring checker. Re-derives every condition from plain
// set comparisons; shares no predicate code with the coloring module.
inline bool check_coloring(const Graph& g, const PartialColoring& col)
{
    for (int v = 0; v < g.n(); ++v) {
        int c = col.vertex_raw(v);
        if (c < 1 || c > col.universe())
            return false;
    }
    for (int e = 0; e < g.m(); ++e) {
        int c = col.edge_raw(e);
        if (c < 1 || c > col.universe())
            return false;
    }
    for (int e = 0; e < g.m(); ++e) {
        auto [u, v] = g.edge(e);
        if (col.vertex_raw(u) == col.vertex_raw(v))
            return false;
        if (col.edge_raw(e) == col.vertex_raw(u) || col.edge_raw(e) == col.vertex_raw(v))
            return false;
    }
    for (int v = 0; v < g.n(); ++v) {
        std::set<int> ecols;
        for (const Incidence& inc : g.incident(v))
            ecols.insert(col.edge_raw(inc.edge));
        if (static_cast<int>(ecols.size()) != g.degree(v))
            return false;
    }
    auto closed_star = [&](int v) {
        std::set<int> s;
        s.insert(col.vertex_raw(v));
        for (const Incidence& inc : g.incident(v))
            s.insert(col.edge_raw(inc.edge));
        return s;
    };
    for (int e = 0; e < g.m(); ++e) {
        auto [u, v] = g.edge(e);
        if (closed_star(u) == closed_star(v))
            return false;
    }
    return true;
}

} // namespace avdtc

#endif
