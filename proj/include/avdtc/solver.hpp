#ifndef AVDTC_SOLVER_HPP
#define AVDTC_SOLVER_HPP

#include "avdtc/color_set.hpp"
#include "avdtc/coloring.hpp"
#include "avdtc/errors.hpp"
#include "avdtc/graph.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace avdtc {

// Counters for the solver branches; filled when SolverConfig::stats is set.
struct BranchStats {
    long subcubic = 0;             // subcubic base colorings
    long small_pivot = 0;          // degree-4 pivot with a single low neighbor
    long case_a_eq = 0;            // supported pair removed, equal leftover edge colors
    long case_a_neq = 0;           // supported pair removed, distinct leftover edge colors
    long case_b = 0;               // unsupported pair removed
    long claim1 = 0;               // selection among >= 4 candidate extensions
    long claim2 = 0;               // 3-candidate route entered
    long claim2_recolor = 0;       // 3-candidate route resolved by recoloring the pivot
    long partner_edge_recolor = 0; // tight free-set guard recolored the partner edge

    BranchStats& operator+=(const BranchStats& o)
    {
        subcubic += o.subcubic;
        small_pivot += o.small_pivot;
        case_a_eq += o.case_a_eq;
        case_a_neq += o.case_a_neq;
        case_b += o.case_b;
        claim1 += o.claim1;
        claim2 += o.claim2;
        claim2_recolor += o.claim2_recolor;
        partner_edge_recolor += o.partner_edge_recolor;
        return *this;
    }
};

struct SolverConfig {
    int k = 0;                 // palette parameter; colors come from [k+3]
    bool deterministic = true; // reserved: the solver has no randomized mode
    bool trace = false;        // step logging plus per-step invariant checks
    std::ostream* trace_out = nullptr;
    BranchStats* stats = nullptr;
};

// A choice of colors for the two removed pivot edges uv1, uv2. Candidates
// with equal eq_class are interchangeable for the selection argument.
struct ExtensionCandidate {
    int v1 = -1, v2 = -1;       // removed edges are uv1 and uv2
    int color1 = 0, color2 = 0; // assignment to uv1, uv2
    ColorSet eq_class;          // the color set {color1, color2}
    ColorSet y_class;           // X minus eq_class
};

inline ExtensionCandidate make_candidate(int v1, int v2, int c1, int c2, const ColorSet& x_set)
{
    ExtensionCandidate cand;
    cand.v1 = v1;
    cand.v2 = v2;
    cand.color1 = c1;
    cand.color2 = c2;
    cand.eq_class = ColorSet(x_set.universe());
    cand.eq_class.insert(c1);
    cand.eq_class.insert(c2);
    cand.y_class = x_set - cand.eq_class;
    return cand;
}

// All two-element sets with one member from a and one from b, as normalized
// (min,max) pairs in ascending order.
inline std::vector<VertexPair> zeta(const ColorSet& a, const ColorSet& b)
{
    std::set<VertexPair> out;
    for (int x : a.values())
        for (int y : b.values())
            if (x != y)
                out.insert(make_pair_norm(x, y));
    return {out.begin(), out.end()};
}

namespace detail {

// Edge-subgraph view over an immutable Graph: edges toggle between active
// and inactive, degrees track the active subgraph.
class WorkGraph {
public:
    explicit WorkGraph(const Graph& g)
        : g_(&g)
        , active_(static_cast<size_t>(g.m()), 1)
        , deg_(static_cast<size_t>(g.n()))
    {
        for (int v = 0; v < g.n(); ++v) {
            deg_[static_cast<size_t>(v)] = g.degree(v);
            if (g.degree(v) > 3)
                ++high_count_;
        }
    }

    const Graph& base() const { return *g_; }
    int n() const { return g_->n(); }
    int degree(int v) const { return deg_[static_cast<size_t>(v)]; }
    bool edge_active(int e) const { return active_[static_cast<size_t>(e)] != 0; }
    int high_count() const { return high_count_; }

    template <class Fn> void for_incident(int v, Fn&& fn) const
    {
        for (const Incidence& inc : g_->incident(v))
            if (active_[static_cast<size_t>(inc.edge)])
                fn(inc.to, inc.edge);
    }

    template <class Fn> void for_edges(Fn&& fn) const
    {
        g_->for_edges([&](int e, int u, int v) {
            if (active_[static_cast<size_t>(e)])
                fn(e, u, v);
        });
    }

    bool has_edge(int u, int v) const
    {
        int e = g_->edge_index(u, v);
        return e >= 0 && active_[static_cast<size_t>(e)];
    }

    void deactivate(int e)
    {
        active_[static_cast<size_t>(e)] = 0;
        auto [u, v] = g_->edge(e);
        bump(u, -1);
        bump(v, -1);
    }

    void activate(int e)
    {
        active_[static_cast<size_t>(e)] = 1;
        auto [u, v] = g_->edge(e);
        bump(u, +1);
        bump(v, +1);
    }

private:
    void bump(int v, int delta)
    {
        int before = deg_[static_cast<size_t>(v)];
        int after = before + delta;
        deg_[static_cast<size_t>(v)] = after;
        if (before > 3 && after <= 3)
            --high_count_;
        else if (before <= 3 && after > 3)
            ++high_count_;
    }

    const Graph* g_;
    std::vector<char> active_;
    std::vector<int> deg_;
    int high_count_ = 0;
};

// Mutable support with O(1) partner lookup. Pairs stay pairwise disjoint.
class SupportState {
public:
    SupportState(int n, const Support& sup)
        : partner_(static_cast<size_t>(n), -1)
    {
        for (const auto& [u, v] : sup.pairs)
            add(u, v);
    }

    int partner(int v) const { return partner_[static_cast<size_t>(v)]; }

    void add(int u, int v)
    {
        partner_[static_cast<size_t>(u)] = v;
        partner_[static_cast<size_t>(v)] = u;
    }

    void remove(int u, int v)
    {
        partner_[static_cast<size_t>(u)] = -1;
        partner_[static_cast<size_t>(v)] = -1;
    }

    std::vector<VertexPair> remove_touching(std::initializer_list<int> vs)
    {
        std::vector<VertexPair> out;
        for (int v : vs) {
            int w = partner(v);
            if (w != -1) {
                out.push_back(make_pair_norm(v, w));
                remove(v, w);
            }
        }
        return out;
    }

    void restore(const std::vector<VertexPair>& pairs)
    {
        for (const auto& [u, v] : pairs)
            add(u, v);
    }

    Support snapshot() const
    {
        Support s;
        for (int v = 0; v < static_cast<int>(partner_.size()); ++v)
            if (partner_[static_cast<size_t>(v)] > v)
                s.pairs.push_back({v, partner_[static_cast<size_t>(v)]});
        return s;
    }

private:
    std::vector<int> partner_;
};

// Colors on the active incident edges of v; every active edge must be
// colored at this point of the pipeline.
template <class View>
ColorSet incident_colors(const View& g, const PartialColoring& col, int v)
{
    ColorSet s(col.universe());
    g.for_incident(v, [&](int, int e) {
        int c = col.edge_raw(e);
        if (c == 0)
            fail(ErrorCode::InternalInvariantBroken,
                "active edge at vertex " + std::to_string(v) + " is uncolored");
        s.insert(c);
    });
    return s;
}

// Incident edge colors plus the vertex color when present.
template <class View>
ColorSet star_colors(const View& g, const PartialColoring& col, int v)
{
    ColorSet s = incident_colors(g, col, v);
    if (int c = col.vertex_raw(v); c != 0)
        s.insert(c);
    return s;
}

inline int smallest_free_color(const ColorSet& forbidden, int limit)
{
    for (int c = 1; c <= limit; ++c)
        if (!forbidden.contains(c))
            return c;
    fail(ErrorCode::InternalInvariantBroken, "no free color among [" + std::to_string(limit) + "]");
}

// Minimal JSON-line builder for the versioned trace output.
class TraceLine {
public:
    TraceLine& num(const char* k, long v)
    {
        key(k);
        s_ += std::to_string(v);
        return *this;
    }

    TraceLine& str(const char* k, const char* v)
    {
        key(k);
        s_ += '"';
        s_ += v;
        s_ += '"';
        return *this;
    }

    TraceLine& boolean(const char* k, bool v)
    {
        key(k);
        s_ += v ? "true" : "false";
        return *this;
    }

    TraceLine& colors(const char* k, const ColorSet& cs)
    {
        key(k);
        s_ += '[';
        bool first = true;
        for (int c : cs.values()) {
            if (!first)
                s_ += ',';
            first = false;
            s_ += std::to_string(c);
        }
        s_ += ']';
        return *this;
    }

    TraceLine& pairs(const char* k, const std::vector<VertexPair>& ps)
    {
        key(k);
        s_ += '[';
        bool first = true;
        for (const auto& [a, b] : ps) {
            if (!first)
                s_ += ',';
            first = false;
            s_ += '[';
            s_ += std::to_string(a);
            s_ += ',';
            s_ += std::to_string(b);
            s_ += ']';
        }
        s_ += ']';
        return *this;
    }

    std::string finish() { return s_ + "}"; }

private:
    void key(const char* k)
    {
        s_ += first_ ? "{\"" : ",\"";
        first_ = false;
        s_ += k;
        s_ += "\":";
    }

    std::string s_;
    bool first_ = true;
};

// v' rule shared by all lemmas: the support partner of a degree-2 vertex
// when one exists, the vertex itself otherwise. Degrees are those of the
// graph the support belongs to.
template <class View>
int designated_vertex(const View& g, const SupportState& sup, int v)
{
    int w = sup.partner(v);
    if (w == -1)
        return v;
    if (g.degree(v) != 2)
        fail(ErrorCode::InternalInvariantBroken,
            "support member " + std::to_string(v) + " has degree != 2");
    return w;
}

// Subcubic coloring: strip active edges largest-first, then reinsert each
// edge with the smallest color free of the six-at-most colors around the
// endpoints and their designated partners. Colors only edges.
inline void subcubic_color(WorkGraph& wg, SupportState& sup, PartialColoring& col)
{
    struct Rec {
        int e;
        std::vector<VertexPair> removed;
    };
    std::vector<std::pair<VertexPair, int>> es;
    wg.for_edges([&](int e, int u, int v) { es.push_back({{u, v}, e}); });
    std::sort(es.begin(), es.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<Rec> stack;
    stack.reserve(es.size());
    for (const auto& [pair, e] : es) {
        Rec r;
        r.e = e;
        r.removed = sup.remove_touching({pair.first, pair.second});
        wg.deactivate(e);
        stack.push_back(std::move(r));
    }
    for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
        wg.activate(it->e);
        sup.restore(it->removed);
        auto [a, b] = wg.base().edge(it->e);
        int ap = designated_vertex(wg, sup, a);
        int bp = designated_vertex(wg, sup, b);
        ColorSet forbidden(col.universe());
        for (int v : {a, b, ap, bp})
            wg.for_incident(v, [&](int, int e2) {
                if (int c = col.edge_raw(e2); c != 0)
                    forbidden.insert(c);
            });
        col.set_edge(it->e, smallest_free_color(forbidden, col.universe()));
    }
}

struct SmallPivotTrace {
    ColorSet x, y;
    const char* resolution = "direct";
};

// Degree-4 pivot with one low neighbor v: color the pivot, try the two
// smallest colors free of the designated-partner set on the reinserted
// edge, and when both collide recolor the pivot out of the conflict.
// Expects uv inactive, sup at the reduced level, and restore_pairs holding
// the pairs that distinguish the two levels.
inline void small_pivot_extend(WorkGraph& wg, SupportState& sup, PartialColoring& col, int u, int v,
    int e_uv, const std::vector<VertexPair>& restore_pairs, SmallPivotTrace* tr = nullptr)
{
    const int universe = col.universe();
    if (universe < 8)
        fail(ErrorCode::InternalInvariantBroken, "small pivot extension needs at least 8 colors");
    for (int w = 0; w < wg.n(); ++w)
        if (wg.degree(w) <= 3)
            col.clear_vertex(w);
    ColorSet forbidden = incident_colors(wg, col, u);
    wg.for_incident(u, [&](int w, int) {
        if (wg.degree(w) > 3) {
            if (int c = col.vertex_raw(w); c != 0)
                forbidden.insert(c);
            else
                fail(ErrorCode::InternalInvariantBroken, "uncolored high vertex next to pivot");
        }
    });
    col.set_vertex(u, smallest_free_color(forbidden, universe));

    sup.restore(restore_pairs);

    // v' uses the degree of v in the full graph of this level.
    int vp = v;
    if (int w = sup.partner(v); w != -1) {
        if (wg.degree(v) + 1 != 2)
            fail(ErrorCode::InternalInvariantBroken, "supported pivot neighbor has degree != 2");
        vp = w;
    }
    ColorSet pv = incident_colors(wg, col, v);
    ColorSet y = pv;
    if (vp != v) {
        ColorSet pvp = incident_colors(wg, col, vp);
        y = pv.is_subset_of(pvp) ? pvp : pv;
    }
    if (y.size() > 2 || !pv.is_subset_of(y))
        fail(ErrorCode::InternalInvariantBroken, "small pivot: bad Y set");

    ColorSet x_set = star_colors(wg, col, u).complement();
    if (x_set.size() < 4)
        fail(ErrorCode::InternalInvariantBroken, "small pivot: |X| < 4");
    if (tr) {
        tr->x = x_set;
        tr->y = y;
    }
    auto xy = (x_set - y).values();
    if (xy.size() < 2)
        fail(ErrorCode::InternalInvariantBroken, "small pivot: |X \\ Y| < 2");
    int c1 = xy[0];
    int c2 = xy[1];

    wg.activate(e_uv);
    std::vector<int> high;
    wg.for_incident(u, [&](int w, int) {
        if (wg.degree(w) > 3)
            high.push_back(w);
    });
    if (high.size() != 3)
        fail(ErrorCode::InternalInvariantBroken, "small pivot: expected exactly 3 high neighbors");

    auto clash_witness = [&]() {
        ColorSet pu = star_colors(wg, col, u);
        for (int x : high)
            if (pu == star_colors(wg, col, x))
                return x;
        return -1;
    };

    col.set_edge(e_uv, c1);
    int w1 = clash_witness();
    if (w1 == -1)
        return;
    col.set_edge(e_uv, c2);
    int w2 = clash_witness();
    if (w2 == -1)
        return;
    if (w1 == w2)
        fail(ErrorCode::InternalInvariantBroken, "small pivot: equal clash witnesses");

    int x3 = -1;
    for (int x : high)
        if (x != w1 && x != w2)
            x3 = x;
    if (x3 == -1)
        fail(ErrorCode::InternalInvariantBroken, "small pivot: no third high neighbor");

    ColorSet rest = x_set;
    rest.erase(c1);
    rest.erase(c2);
    auto restv = rest.values();
    if (restv.size() < 2)
        fail(ErrorCode::InternalInvariantBroken, "small pivot: |X \\ {c1,c2}| < 2");
    int c3 = restv[0];
    int c4 = restv[1];

    ColorSet px3 = star_colors(wg, col, x3); // uv is not incident to x3
    col.set_edge(e_uv, c1);
    if (tr)
        tr->resolution = "recolor-pivot";
    if (!px3.contains(c3)) {
        col.set_vertex(u, c3);
    } else if (!px3.contains(c4)) {
        col.set_vertex(u, c4);
    } else {
        int cx3 = col.vertex_raw(x3);
        int cj = (c3 != cx3) ? c3 : c4;
        if (cj == cx3)
            fail(ErrorCode::InternalInvariantBroken, "small pivot: both spare colors equal the vertex color");
        col.set_vertex(u, cj);
    }
}

// First candidate whose leftover class differs from the co-palette of
// every high neighbor of u. With >= 4 pairwise non-equivalent candidates
// and <= 3 high neighbors one always exists.
template <class View>
std::optional<ExtensionCandidate> select_claim1_impl(const View& g, const PartialColoring& col, int u,
    const std::vector<ExtensionCandidate>& candidates)
{
    if (candidates.size() < 4)
        return std::nullopt;
    std::vector<ColorSet> co;
    g.for_incident(u, [&](int w, int) {
        if (g.degree(w) > 3)
            co.push_back(star_colors(g, col, w).complement());
    });
    if (co.size() > 3)
        fail(ErrorCode::InternalInvariantBroken, "pivot with more than 3 high neighbors");
    for (const auto& cand : candidates) {
        bool ok = true;
        for (const auto& c : co)
            if (cand.y_class == c) {
                ok = false;
                break;
            }
        if (ok)
            return cand;
    }
    fail(ErrorCode::InternalInvariantBroken, "no candidate avoids every high co-palette");
}

// The 3-candidate repair: adopt the first candidate's edge colors and move
// the pivot to a color of X untouched by any candidate. Requires that each
// candidate clashes with a distinct high neighbor and that those neighbors
// exhaust N>3(u). Returns false when some candidate needs no repair (the
// caller should have used it instead).
template <class View>
void claim2_apply(const View& g, PartialColoring& col, int u, int e1, int e2, const ColorSet& x_set,
    const std::vector<ExtensionCandidate>& cands)
{
    std::vector<int> high;
    g.for_incident(u, [&](int w, int) {
        if (g.degree(w) > 3)
            high.push_back(w);
    });
    if (high.size() != 3)
        fail(ErrorCode::InternalInvariantBroken, "3-candidate repair without exactly 3 high neighbors");

    ColorSet used(x_set.universe());
    for (const auto& cand : cands) {
        used.insert(cand.color1);
        used.insert(cand.color2);
    }
    if (!used.is_subset_of(x_set) || used.size() >= x_set.size())
        fail(ErrorCode::InternalInvariantBroken, "3-candidate repair: assignments do not leave a free color in X");
    int c = (x_set - used).first();

    std::vector<int> witnesses;
    for (const auto& cand : cands) {
        col.set_edge(e1, cand.color1);
        col.set_edge(e2, cand.color2);
        ColorSet pu = star_colors(g, col, u);
        int w = -1;
        for (int x : high)
            if (pu == star_colors(g, col, x))
                w = x;
        if (w == -1)
            fail(ErrorCode::InternalInvariantBroken, "3-candidate repair applied to a conflict-free candidate");
        witnesses.push_back(w);
    }
    std::sort(witnesses.begin(), witnesses.end());
    if (std::unique(witnesses.begin(), witnesses.end()) != witnesses.end())
        fail(ErrorCode::InternalInvariantBroken, "3-candidate repair: clash witnesses are not distinct");

    col.set_edge(e1, cands[0].color1);
    col.set_edge(e2, cands[0].color2);
    col.set_vertex(u, c);
}

struct Reduction {
    enum class Kind { SmallPivot, Main };
    Kind kind = Kind::Main;
    int u = -1;
    int v1 = -1, e1 = -1;
    int v2 = -1, e2 = -1;
    int vp1 = -1, vp2 = -1;
    bool case_a = false;
    bool added_pair = false;
    std::vector<VertexPair> removed_pairs;
};

class Pipeline {
public:
    Pipeline(const Graph& g, const Support& sup, const SolverConfig& cfg)
        : g_(g)
        , cfg_(cfg)
        , wg_(g)
        , sup_(g.n(), sup)
        , col_(cfg.k + 3, g.n(), g.m())
    {
    }

    PartialColoring run()
    {
        reduce();
        base_subcubic();
        replay();
        return std::move(col_);
    }

private:
    void count(long BranchStats::* field)
    {
        if (cfg_.stats)
            (cfg_.stats)->*field += 1;
    }

    void emit(TraceLine& line)
    {
        if (cfg_.trace && cfg_.trace_out)
            *cfg_.trace_out << line.finish() << "\n";
    }

    void check_level(const char* where)
    {
        if (!cfg_.trace)
            return;
        auto viols = check_partial_avd_view(wg_, col_);
        if (!viols.empty())
            fail(ErrorCode::InternalInvariantBroken,
                std::string(where) + ": " + to_string(viols.front()));
        Support s = sup_.snapshot();
        auto sv = check_support_view(wg_, s, col_);
        if (!sv.empty())
            fail(ErrorCode::InternalInvariantBroken,
                std::string(where) + ": " + to_string(sv.front()));
    }

    void reduce()
    {
        while (wg_.high_count() > 0) {
            int u = find_pivot_view(wg_);
            std::vector<int> lows;
            wg_.for_incident(u, [&](int w, int) {
                if (wg_.degree(w) <= 3)
                    lows.push_back(w);
            });
            if (lows.empty())
                fail(ErrorCode::InternalInvariantBroken, "pivot without low neighbor");
            Reduction r;
            r.u = u;
            if (lows.size() == 1) {
                r.kind = Reduction::Kind::SmallPivot;
                r.v1 = lows[0];
                r.e1 = g_.edge_index(u, r.v1);
                if (wg_.degree(u) != 4)
                    fail(ErrorCode::InternalInvariantBroken, "single-low pivot of degree != 4");
                r.removed_pairs = sup_.remove_touching({r.v1});
                wg_.deactivate(r.e1);
            } else {
                r.kind = Reduction::Kind::Main;
                r.v1 = lows[0];
                r.v2 = lows[1];
                r.e1 = g_.edge_index(u, r.v1);
                r.e2 = g_.edge_index(u, r.v2);
                r.vp1 = designated_vertex(wg_, sup_, r.v1);
                r.vp2 = designated_vertex(wg_, sup_, r.v2);
                if (r.vp1 == r.vp2 || r.vp1 == u || r.vp2 == u)
                    fail(ErrorCode::InternalInvariantBroken, "designated partners are not distinct from the pivot");
                r.case_a = (sup_.partner(r.v1) == r.v2);
                wg_.deactivate(r.e1);
                wg_.deactivate(r.e2);
                r.removed_pairs = sup_.remove_touching({r.v1, r.v2});
                if (wg_.degree(r.vp1) == 2 && wg_.degree(r.vp2) == 2 && !wg_.has_edge(r.vp1, r.vp2)) {
                    sup_.add(r.vp1, r.vp2);
                    r.added_pair = true;
                }
            }
            stack_.push_back(std::move(r));
        }
    }

    void base_subcubic()
    {
        subcubic_color(wg_, sup_, col_);
        count(&BranchStats::subcubic);
        if (cfg_.trace && cfg_.trace_out) {
            TraceLine line;
            line.str("trace", "avdtc.step.v1").num("step", step_).str("branch", "subcubic");
            emit(line);
        }
        ++step_;
        check_level("after subcubic base");
    }

    void replay()
    {
        for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
            if (it->kind == Reduction::Kind::SmallPivot)
                replay_small_pivot(*it);
            else
                replay_main(*it);
            ++step_;
            check_level("after pivot replay");
        }
    }

    void replay_small_pivot(const Reduction& r)
    {
        SmallPivotTrace tr;
        small_pivot_extend(wg_, sup_, col_, r.u, r.v1, r.e1, r.removed_pairs,
            cfg_.trace ? &tr : nullptr);
        count(&BranchStats::small_pivot);
        if (cfg_.trace && cfg_.trace_out) {
            TraceLine line;
            line.str("trace", "avdtc.step.v1").num("step", step_).str("branch", "small-pivot").num("pivot", r.u);
            line.pairs("removed", {make_pair_norm(r.u, r.v1)});
            line.colors("X", tr.x);
            line.colors("Y", tr.y);
            line.str("resolution", tr.resolution);
            emit(line);
        }
    }

    void replay_main(const Reduction& r)
    {
        const int universe = col_.universe();

        // Uncolor the low vertices of the reduced graph, then make sure the
        // pivot carries a color.
        for (int w = 0; w < wg_.n(); ++w)
            if (wg_.degree(w) <= 3)
                col_.clear_vertex(w);
        if (wg_.degree(r.u) <= 3) {
            ColorSet forbidden = incident_colors(wg_, col_, r.u);
            wg_.for_incident(r.u, [&](int w, int) {
                if (wg_.degree(w) > 3)
                    if (int c = col_.vertex_raw(w); c != 0)
                        forbidden.insert(c);
            });
            col_.set_vertex(r.u, smallest_free_color(forbidden, universe));
        } else if (col_.vertex_raw(r.u) == 0) {
            fail(ErrorCode::InternalInvariantBroken, "high pivot lost its color");
        }

        ColorSet x_set = star_colors(wg_, col_, r.u).complement();
        if (x_set.size() < 4)
            fail(ErrorCode::InternalInvariantBroken, "pivot free set smaller than 4");

        // Tight guard: when X is minimal and the designated partners form a
        // degree-2 adjacent pair whose edge color lies in X, move that edge
        // color out of X.
        bool partner_recolor = false;
        if (x_set.size() == 4 && wg_.degree(r.vp1) == 2 && wg_.degree(r.vp2) == 2) {
            int pe = g_.edge_index(r.vp1, r.vp2);
            if (pe >= 0 && wg_.edge_active(pe) && x_set.contains(col_.edge_raw(pe))) {
                ColorSet forbidden = x_set | incident_colors(wg_, col_, r.vp1) | incident_colors(wg_, col_, r.vp2);
                col_.set_edge(pe, smallest_free_color(forbidden, universe));
                partner_recolor = true;
                count(&BranchStats::partner_edge_recolor);
            }
        }

        const char* branch = "caseB";
        bool route_claim2 = false;
        std::vector<ExtensionCandidate> cands;
        ColorSet x1, x2;
        bool have_x12 = false;

        if (r.case_a) {
            if (wg_.degree(r.v1) != 1 || wg_.degree(r.v2) != 1)
                fail(ErrorCode::InternalInvariantBroken, "supported pair without pendant degrees");
            int c1 = incident_colors(wg_, col_, r.v1).first();
            int c2 = incident_colors(wg_, col_, r.v2).first();
            if (c1 == c2) {
                branch = "caseA-eq";
                count(&BranchStats::case_a_eq);
                ColorSet base = x_set;
                base.erase(c1);
                auto bv = base.values();
                if (bv.size() < 3)
                    fail(ErrorCode::InternalInvariantBroken, "supported pair: |X \\ {c}| < 3");
                for (size_t i = 0; i < bv.size(); ++i)
                    for (size_t j = i + 1; j < bv.size(); ++j)
                        cands.push_back(make_candidate(r.v1, r.v2, bv[i], bv[j], x_set));
                if (cands.size() == 3)
                    route_claim2 = true;
            } else {
                branch = "caseA-neq";
                count(&BranchStats::case_a_neq);
                ColorSet a = x_set, b = x_set;
                a.erase(c1);
                b.erase(c2);
                auto classes = zeta(a, b);
                if (classes.size() < 5)
                    fail(ErrorCode::InternalInvariantBroken, "supported pair: fewer than 5 classes");
                for (const auto& [p, q] : classes) {
                    bool bad1 = (p == c2 && q == c1);
                    bool bad2 = (q == c2 && p == c1);
                    if (a.contains(p) && b.contains(q) && !bad1)
                        cands.push_back(make_candidate(r.v1, r.v2, p, q, x_set));
                    else if (a.contains(q) && b.contains(p) && !bad2)
                        cands.push_back(make_candidate(r.v1, r.v2, q, p, x_set));
                }
                if (cands.size() < 4)
                    fail(ErrorCode::InternalInvariantBroken, "supported pair: fewer than 4 usable candidates");
            }
        } else {
            count(&BranchStats::case_b);
            auto build_xi = [&](int v, int vp) {
                ColorSet pv = incident_colors(wg_, col_, v);
                ColorSet xi;
                if (v != vp) {
                    ColorSet pvp = incident_colors(wg_, col_, vp);
                    xi = pv.is_subset_of(pvp) ? x_set - pvp : x_set - pv;
                } else {
                    xi = x_set - pv;
                }
                if (!(xi & pv).empty() || xi.size() < 2)
                    fail(ErrorCode::InternalInvariantBroken, "free set at a removed endpoint is too small");
                return xi;
            };
            x1 = build_xi(r.v1, r.vp1);
            x2 = build_xi(r.v2, r.vp2);
            have_x12 = true;
            if ((x1 | x2).size() < 3)
                fail(ErrorCode::InternalInvariantBroken, "|X1 union X2| < 3");
            auto classes = zeta(x1, x2);
            for (const auto& [p, q] : classes) {
                if (x1.contains(p) && x2.contains(q))
                    cands.push_back(make_candidate(r.v1, r.v2, p, q, x_set));
                else if (x1.contains(q) && x2.contains(p))
                    cands.push_back(make_candidate(r.v1, r.v2, q, p, x_set));
                else
                    fail(ErrorCode::InternalInvariantBroken, "class admits no orientation");
            }
            if ((x1 | x2).size() == 3) {
                if (cands.size() != 3)
                    fail(ErrorCode::InternalInvariantBroken, "expected exactly 3 classes");
                route_claim2 = true;
            } else if (cands.size() < 4) {
                fail(ErrorCode::InternalInvariantBroken, "fewer than 4 classes with |X1 union X2| > 3");
            }
        }

        wg_.activate(r.e1);
        wg_.activate(r.e2);

        const char* claim = "claim1";
        if (!route_claim2) {
            auto chosen = select_claim1_impl(wg_, col_, r.u, cands);
            if (!chosen)
                fail(ErrorCode::InternalInvariantBroken, "selection failed with >= 4 candidates");
            col_.set_edge(r.e1, chosen->color1);
            col_.set_edge(r.e2, chosen->color2);
            count(&BranchStats::claim1);
        } else {
            claim = "claim2";
            count(&BranchStats::claim2);
            // The 3-candidate route: use a conflict-free candidate when one
            // exists, otherwise repair by recoloring the pivot.
            std::vector<ColorSet> co;
            wg_.for_incident(r.u, [&](int w, int) {
                if (wg_.degree(w) > 3)
                    co.push_back(star_colors(wg_, col_, w).complement());
            });
            const ExtensionCandidate* direct = nullptr;
            for (const auto& cand : cands) {
                bool ok = true;
                for (const auto& c : co)
                    if (cand.y_class == c) {
                        ok = false;
                        break;
                    }
                if (ok) {
                    direct = &cand;
                    break;
                }
            }
            if (direct) {
                col_.set_edge(r.e1, direct->color1);
                col_.set_edge(r.e2, direct->color2);
            } else {
                claim2_apply(wg_, col_, r.u, r.e1, r.e2, x_set, cands);
                count(&BranchStats::claim2_recolor);
            }
        }

        if (r.added_pair)
            sup_.remove(r.vp1, r.vp2);
        sup_.restore(r.removed_pairs);

        if (cfg_.trace && cfg_.trace_out) {
            TraceLine line;
            line.str("trace", "avdtc.step.v1").num("step", step_).str("branch", branch).num("pivot", r.u);
            line.pairs("removed", {make_pair_norm(r.u, r.v1), make_pair_norm(r.u, r.v2)});
            line.colors("X", x_set);
            if (have_x12) {
                line.colors("X1", x1);
                line.colors("X2", x2);
            }
            line.str("claim", claim);
            line.boolean("partner_recolor", partner_recolor);
            emit(line);
        }
    }

    const Graph& g_;
    SolverConfig cfg_;
    WorkGraph wg_;
    SupportState sup_;
    PartialColoring col_;
    std::vector<Reduction> stack_;
    long step_ = 0;
};

} // namespace detail

// Partial coloring of a subcubic graph: every edge colored, no vertex
// colored, the given support satisfied.
inline PartialColoring color_subcubic(const Graph& g, const Support& sup, int c_size)
{
    if (g.max_degree() > 3)
        fail(ErrorCode::PreconditionViolated, "graph has max degree > 3");
    if (c_size < 7)
        fail(ErrorCode::PreconditionViolated, "need at least 7 colors");
    validate_support(g, sup);
    detail::WorkGraph wg(g);
    detail::SupportState ss(g.n(), sup);
    PartialColoring col(c_size, g.n(), g.m());
    detail::subcubic_color(wg, ss, col);
    return col;
}

// Extension of a partial coloring of g - {uv} to one of g, for a degree-4
// pivot u whose single low neighbor is v.
inline PartialColoring extend_small_pivot(const Graph& g, const Support& sup, int u, int v,
    const PartialColoring& inner, int c_size)
{
    if (c_size < 8)
        fail(ErrorCode::PreconditionViolated, "need at least 8 colors");
    if (u < 0 || u >= g.n() || v < 0 || v >= g.n())
        fail(ErrorCode::PreconditionViolated, "pivot or neighbor out of range");
    if (g.degree(u) != 4)
        fail(ErrorCode::PreconditionViolated, "pivot degree must be 4");
    int e = g.edge_index(u, v);
    if (e < 0)
        fail(ErrorCode::PreconditionViolated, "uv is not an edge");
    for (const Incidence& inc : g.incident(u))
        if ((g.degree(inc.to) <= 3) != (inc.to == v))
            fail(ErrorCode::PreconditionViolated, "v must be the unique low neighbor of u");
    if (inner.universe() != c_size || inner.n_vertices() != g.n() || inner.n_edges() != g.m())
        fail(ErrorCode::PreconditionViolated, "inner coloring does not match the graph and universe");
    validate_support(g, sup);

    detail::WorkGraph wg(g);
    wg.deactivate(e);
    detail::SupportState ss(g.n(), sup);
    auto removed = ss.remove_touching({v});

    PartialColoring col = inner;
    col.clear_edge(e);
    if (!check_partial_avd_view(wg, col).empty())
        fail(ErrorCode::PreconditionViolated, "inner is not a partial AVD total coloring of g - uv");
    if (!check_support_view(wg, ss.snapshot(), col).empty())
        fail(ErrorCode::PreconditionViolated, "inner does not satisfy the reduced support");

    detail::small_pivot_extend(wg, ss, col, u, v, e, removed);
    return col;
}

// First of >= 4 pairwise non-equivalent candidates that beats the
// co-palette of every high neighbor of u; none when fewer than 4 are given.
inline std::optional<ExtensionCandidate> select_claim1(const Graph& g, int u,
    const std::vector<ExtensionCandidate>& candidates, const PartialColoring& inner)
{
    return detail::select_claim1_impl(g, inner, u, candidates);
}

// Repair for three pairwise non-equivalent failing candidates whose colors
// leave some member of X untouched: adopt the first candidate's edge colors
// and recolor u with the smallest untouched color.
inline PartialColoring claim2_repair(const Graph& g, int u, const std::vector<ExtensionCandidate>& failing,
    const ColorSet& x_set, const PartialColoring& inner)
{
    if (failing.size() != 3)
        fail(ErrorCode::PreconditionViolated, "exactly three candidates required");
    for (size_t i = 0; i < failing.size(); ++i)
        for (size_t j = i + 1; j < failing.size(); ++j)
            if (failing[i].eq_class == failing[j].eq_class)
                fail(ErrorCode::PreconditionViolated, "candidates must be pairwise non-equivalent");
    int v1 = failing[0].v1, v2 = failing[0].v2;
    for (const auto& cand : failing)
        if (cand.v1 != v1 || cand.v2 != v2)
            fail(ErrorCode::PreconditionViolated, "candidates target different edges");
    int e1 = g.edge_index(u, v1);
    int e2 = g.edge_index(u, v2);
    if (e1 < 0 || e2 < 0)
        fail(ErrorCode::PreconditionViolated, "candidate edges are not edges of g");
    ColorSet used(x_set.universe());
    for (const auto& cand : failing) {
        used.insert(cand.color1);
        used.insert(cand.color2);
    }
    if (!used.is_subset_of(x_set) || used.size() >= x_set.size())
        fail(ErrorCode::PreconditionViolated, "candidate colors must leave a free color in X");

    PartialColoring col = inner;
    try {
        detail::claim2_apply(g, col, u, e1, e2, x_set, failing);
    } catch (const Error& err) {
        if (err.code() == ErrorCode::InternalInvariantBroken)
            fail(ErrorCode::PreconditionViolated, err.what());
        throw;
    }
    return col;
}

// The inductive pipeline: reduce at 3-pivots to a subcubic core, color it,
// and replay the reductions. Produces a partial AVD total coloring over
// [k+3] satisfying the support.
inline PartialColoring color_main(const Graph& g, const Support& sup, const SolverConfig& cfg)
{
    if (cfg.k < 5)
        fail(ErrorCode::PreconditionViolated, "k must be at least 5");
    if (g.max_degree() > cfg.k)
        fail(ErrorCode::DeltaExceedsK,
            "max degree " + std::to_string(g.max_degree()) + " exceeds k=" + std::to_string(cfg.k));
    if (degeneracy(g).d > 3)
        fail(ErrorCode::NotThreeDegenerate, "input graph is not 3-degenerate");
    validate_support(g, sup);
    detail::Pipeline pipeline(g, sup, cfg);
    return pipeline.run();
}

inline PartialColoring color_main(const Graph& g, const Support& sup, int k)
{
    SolverConfig cfg;
    cfg.k = k;
    return color_main(g, sup, cfg);
}

struct RepairStats {
    int vertices_colored = 0;
    std::vector<int> violating_counts; // violating-edge count before each recolor
};

// Completion of a partial AVD total coloring: greedily color the remaining
// low vertices, then repeatedly recolor an endpoint of a palette-equal edge
// until none remains. Edge colors are never touched.
inline PartialColoring complete_and_repair(const Graph& g, const Support& sup, PartialColoring col,
    RepairStats* stats = nullptr)
{
    const int universe = col.universe();
    if (universe < 7)
        fail(ErrorCode::PreconditionViolated, "need at least 7 colors");
    if (!is_partial_avd(g, col))
        fail(ErrorCode::PreconditionViolated, "input is not a partial AVD total coloring");
    validate_support(g, sup);
    if (!satisfies_support(g, sup, col))
        fail(ErrorCode::PreconditionViolated, "input does not satisfy the support");

    // Phase 1: color uncolored vertices smallest-id first, smallest free
    // color; at most 6 colors are in sight of a low vertex.
    for (int v = 0; v < g.n(); ++v) {
        if (col.vertex_raw(v) != 0)
            continue;
        if (g.degree(v) > 3)
            fail(ErrorCode::InternalInvariantBroken, "uncolored high vertex in a partial AVD coloring");
        ColorSet forbidden(universe);
        g.for_incident(v, [&](int w, int e) {
            forbidden.insert(col.edge_raw(e));
            if (int c = col.vertex_raw(w); c != 0)
                forbidden.insert(c);
        });
        col.set_vertex(v, detail::smallest_free_color(forbidden, universe));
        if (stats)
            ++stats->vertices_colored;
    }

    // Phase 2: resolve palette-equal edges. Their endpoints are low, so
    // |X| <= 4 and each neighbor rules out at most one replacement color.
    auto palette = [&](int v) { return detail::star_colors(g, col, v); };
    for (int iter = 0;; ++iter) {
        if (iter > g.m() + 1)
            fail(ErrorCode::InternalInvariantBroken, "repair loop did not terminate");
        int viol_u = -1, viol_v = -1, viol_count = 0;
        g.for_edges([&](int, int a, int b) {
            if (palette(a) == palette(b)) {
                ++viol_count;
                if (viol_u == -1 || std::make_pair(a, b) < std::make_pair(viol_u, viol_v)) {
                    viol_u = a;
                    viol_v = b;
                }
            }
        });
        if (stats && viol_count > 0)
            stats->violating_counts.push_back(viol_count);
        if (viol_count == 0)
            break;
        int u = viol_u;
        if (g.degree(u) > 3)
            fail(ErrorCode::InternalInvariantBroken, "violating edge with a high endpoint");
        ColorSet x_set = palette(u);
        int chosen = 0;
        for (int c = 1; c <= universe && chosen == 0; ++c) {
            if (x_set.contains(c))
                continue;
            bool bad = false;
            g.for_incident(u, [&](int w, int) {
                if (bad)
                    return;
                if (col.vertex_raw(w) == c) {
                    bad = true;
                    return;
                }
                ColorSet rest = palette(w) - x_set;
                if (rest.size() == 1 && rest.contains(c))
                    bad = true;
            });
            if (!bad)
                chosen = c;
        }
        if (chosen == 0)
            fail(ErrorCode::InternalInvariantBroken, "no safe replacement color for a violating endpoint");
        col.set_vertex(u, chosen);
    }
    return col;
}

struct SolveOptions {
    bool force_k5 = false; // allow max degree <= 4 by running the pipeline at k=5
    bool trace = false;
    std::ostream* trace_out = nullptr;
    BranchStats* stats = nullptr;
    RepairStats* repair_stats = nullptr;
};

// Full AVD total coloring over [max(Delta,5)+3] colors satisfying the
// support: the pipeline followed by completion and repair.
inline PartialColoring solve(const Graph& g, const Support& sup, const SolveOptions& opt)
{
    if (degeneracy(g).d > 3)
        fail(ErrorCode::NotThreeDegenerate, "input graph is not 3-degenerate");
    validate_support(g, sup);
    int delta = g.max_degree();
    if (delta < 5 && !opt.force_k5)
        fail(ErrorCode::DeltaTooSmall,
            "max degree " + std::to_string(delta) + " < 5; rerun with the k=5 override to accept 8 colors");
    SolverConfig cfg;
    cfg.k = std::max(delta, 5);
    cfg.trace = opt.trace;
    cfg.trace_out = opt.trace_out;
    cfg.stats = opt.stats;
    PartialColoring partial = color_main(g, sup, cfg);
    return complete_and_repair(g, sup, std::move(partial), opt.repair_stats);
}

inline PartialColoring solve(const Graph& g, const Support& sup)
{
    return solve(g, sup, SolveOptions{});
}

} // namespace avdtc

#endif
