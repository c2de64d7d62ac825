#ifndef AVDTC_COLORING_HPP
#define AVDTC_COLORING_HPP

#include "avdtc/color_set.hpp"
#include "avdtc/errors.hpp"
#include "avdtc/graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace avdtc {

// Colors for a (possibly partial) total coloring over the universe
// {1, ..., universe}. Vertices and edges are independently optional; the
// uncolored state is exposed as std::nullopt and stored as 0.
class PartialColoring {
public:
    PartialColoring() = default;

    PartialColoring(int universe, int n_vertices, int n_edges)
        : universe_(universe)
        , vertex_(static_cast<size_t>(n_vertices), 0)
        , edge_(static_cast<size_t>(n_edges), 0)
    {
    }

    int universe() const { return universe_; }
    int n_vertices() const { return static_cast<int>(vertex_.size()); }
    int n_edges() const { return static_cast<int>(edge_.size()); }

    std::optional<int> vertex_color(int v) const
    {
        int c = vertex_[static_cast<size_t>(v)];
        return c == 0 ? std::nullopt : std::optional<int>(c);
    }

    std::optional<int> edge_color(int e) const
    {
        int c = edge_[static_cast<size_t>(e)];
        return c == 0 ? std::nullopt : std::optional<int>(c);
    }

    // Raw accessors use 0 for "uncolored"; handy for serialization and the
    // hot paths in the solver.
    int vertex_raw(int v) const { return vertex_[static_cast<size_t>(v)]; }
    int edge_raw(int e) const { return edge_[static_cast<size_t>(e)]; }

    void set_vertex(int v, int c)
    {
        check_color(c);
        vertex_[static_cast<size_t>(v)] = c;
    }

    void set_edge(int e, int c)
    {
        check_color(c);
        edge_[static_cast<size_t>(e)] = c;
    }

    void clear_vertex(int v) { vertex_[static_cast<size_t>(v)] = 0; }
    void clear_edge(int e) { edge_[static_cast<size_t>(e)] = 0; }

    int colored_vertex_count() const
    {
        int k = 0;
        for (int c : vertex_)
            k += c != 0;
        return k;
    }

    bool operator==(const PartialColoring&) const = default;

private:
    void check_color(int c) const
    {
        if (c < 1 || c > universe_)
            fail(ErrorCode::BadSpec,
                "color " + std::to_string(c) + " outside universe [1," + std::to_string(universe_) + "]");
    }

    int universe_ = 0;
    std::vector<int> vertex_;
    std::vector<int> edge_;
};

enum class ViolationKind {
    UncoloredEdge,
    UncoloredVertex,
    UncoloredHighVertex,
    VertexClash,     // adjacent colored vertices share a color
    EdgeClash,       // incident edges share a color
    VertexEdgeClash, // colored vertex equals an incident edge color
    PaletteClash,    // adjacent vertices with equal palettes
    SupportClash,    // support pair with equal incident-edge color sets
};

struct Violation {
    ViolationKind kind;
    int a = -1;
    int b = -1;
};

inline std::string to_string(const Violation& v)
{
    auto name = [](ViolationKind k) {
        switch (k) {
        case ViolationKind::UncoloredEdge: return "uncolored edge";
        case ViolationKind::UncoloredVertex: return "uncolored vertex";
        case ViolationKind::UncoloredHighVertex: return "uncolored high-degree vertex";
        case ViolationKind::VertexClash: return "adjacent vertices share a color";
        case ViolationKind::EdgeClash: return "incident edges share a color";
        case ViolationKind::VertexEdgeClash: return "vertex equals incident edge color";
        case ViolationKind::PaletteClash: return "adjacent vertices with equal palettes";
        case ViolationKind::SupportClash: return "support pair with equal edge color sets";
        }
        return "violation";
    };
    std::string s = name(v.kind);
    if (v.a >= 0)
        s += " (" + std::to_string(v.a) + (v.b >= 0 ? "," + std::to_string(v.b) : "") + ")";
    return s;
}

// phi(d*(u)): the vertex color (when present) plus all incident edge colors.
// Every incident edge must be colored.
template <class View>
ColorSet palette_of_view(const View& g, const PartialColoring& col, int u)
{
    ColorSet p(col.universe());
    bool missing = false;
    g.for_incident(u, [&](int, int e) {
        int c = col.edge_raw(e);
        if (c == 0)
            missing = true;
        else
            p.insert(c);
    });
    if (missing)
        fail(ErrorCode::UncoloredEdge, "vertex " + std::to_string(u) + " has an uncolored incident edge");
    if (int c = col.vertex_raw(u); c != 0)
        p.insert(c);
    return p;
}

inline ColorSet palette_of(const Graph& g, const PartialColoring& col, int u)
{
    return palette_of_view(g, col, u);
}

inline ColorSet copalette_of(const Graph& g, const PartialColoring& col, int u)
{
    return palette_of(g, col, u).complement();
}

namespace detail {

// Properness of the colored portion: vertex/vertex on edges, edge/edge at
// shared endpoints, vertex/edge at endpoints. Shared by the partial and the
// total checker.
template <class View>
void check_properness(const View& g, const PartialColoring& col, std::vector<Violation>& out)
{
    g.for_edges([&](int e, int u, int v) {
        int cu = col.vertex_raw(u);
        int cv = col.vertex_raw(v);
        int ce = col.edge_raw(e);
        if (cu != 0 && cu == cv)
            out.push_back({ViolationKind::VertexClash, u, v});
        if (ce != 0 && ce == cu)
            out.push_back({ViolationKind::VertexEdgeClash, u, v});
        if (ce != 0 && ce == cv)
            out.push_back({ViolationKind::VertexEdgeClash, v, u});
    });
    for (int u = 0; u < g.n(); ++u) {
        ColorSet seen(col.universe());
        g.for_incident(u, [&](int v, int e) {
            int ce = col.edge_raw(e);
            if (ce == 0)
                return;
            if (seen.contains(ce))
                out.push_back({ViolationKind::EdgeClash, u, v});
            else
                seen.insert(ce);
        });
    }
}

template <class View>
ColorSet palette_no_throw(const View& g, const PartialColoring& col, int u)
{
    ColorSet p(col.universe());
    g.for_incident(u, [&](int, int e) {
        if (int c = col.edge_raw(e); c != 0)
            p.insert(c);
    });
    if (int c = col.vertex_raw(u); c != 0)
        p.insert(c);
    return p;
}

} // namespace detail

// Partial AVD total coloring check: all edges colored, all degree->3
// vertices colored, properness wherever colors are present, and distinct
// palettes across every edge joining two degree->3 vertices.
template <class View>
std::vector<Violation> check_partial_avd_view(const View& g, const PartialColoring& col)
{
    std::vector<Violation> out;
    g.for_edges([&](int e, int u, int v) {
        if (col.edge_raw(e) == 0)
            out.push_back({ViolationKind::UncoloredEdge, u, v});
    });
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) > 3 && col.vertex_raw(v) == 0)
            out.push_back({ViolationKind::UncoloredHighVertex, v});
    detail::check_properness(g, col, out);
    g.for_edges([&](int, int u, int v) {
        if (g.degree(u) > 3 && g.degree(v) > 3) {
            if (detail::palette_no_throw(g, col, u) == detail::palette_no_throw(g, col, v))
                out.push_back({ViolationKind::PaletteClash, u, v});
        }
    });
    return out;
}

inline std::vector<Violation> check_partial_avd(const Graph& g, const PartialColoring& col)
{
    return check_partial_avd_view(g, col);
}

inline bool is_partial_avd(const Graph& g, const PartialColoring& col)
{
    return check_partial_avd(g, col).empty();
}

// Full AVD total coloring check: everything colored, proper, and distinct
// palettes across every edge.
template <class View>
std::vector<Violation> check_avd_total_view(const View& g, const PartialColoring& col)
{
    std::vector<Violation> out;
    g.for_edges([&](int e, int u, int v) {
        if (col.edge_raw(e) == 0)
            out.push_back({ViolationKind::UncoloredEdge, u, v});
    });
    for (int v = 0; v < g.n(); ++v)
        if (col.vertex_raw(v) == 0)
            out.push_back({ViolationKind::UncoloredVertex, v});
    detail::check_properness(g, col, out);
    g.for_edges([&](int, int u, int v) {
        if (detail::palette_no_throw(g, col, u) == detail::palette_no_throw(g, col, v))
            out.push_back({ViolationKind::PaletteClash, u, v});
    });
    return out;
}

inline std::vector<Violation> check_avd_total(const Graph& g, const PartialColoring& col)
{
    return check_avd_total_view(g, col);
}

inline bool is_avd_total(const Graph& g, const PartialColoring& col)
{
    return check_avd_total(g, col).empty();
}

// Support satisfaction: for each pair, the incident-edge color sets differ.
// Vertex colors are irrelevant here.
template <class View>
std::vector<Violation> check_support_view(const View& g, const Support& sup, const PartialColoring& col)
{
    std::vector<Violation> out;
    auto edge_colors = [&](int u) {
        ColorSet s(col.universe());
        g.for_incident(u, [&](int, int e) {
            int c = col.edge_raw(e);
            if (c == 0)
                fail(ErrorCode::UncoloredEdge,
                    "support member " + std::to_string(u) + " has an uncolored incident edge");
            s.insert(c);
        });
        return s;
    };
    for (const auto& [u, v] : sup.pairs)
        if (edge_colors(u) == edge_colors(v))
            out.push_back({ViolationKind::SupportClash, u, v});
    return out;
}

inline std::vector<Violation> check_support(const Graph& g, const Support& sup, const PartialColoring& col)
{
    return check_support_view(g, sup, col);
}

inline bool satisfies_support(const Graph& g, const Support& sup, const PartialColoring& col)
{
    return check_support(g, sup, col).empty();
}

} // namespace avdtc

#endif
