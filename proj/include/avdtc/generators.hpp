#ifndef AVDTC_GENERATORS_HPP
#define AVDTC_GENERATORS_HPP

#include "avdtc/errors.hpp"
#include "avdtc/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace avdtc {

enum class GenKind {
    Random3d,
    Path,
    Cycle,
    Star,
    Complete,
    Petersen,
    Wheel,
    SmallPivotGadget,
};

struct GenSpec {
    GenKind kind = GenKind::Random3d;
    int n = 0;
    std::uint64_t seed = 0;
    int back_degree = 3; // random3d: max edges to earlier vertices
};

inline const char* gen_kind_name(GenKind k)
{
    switch (k) {
    case GenKind::Random3d: return "random3d";
    case GenKind::Path: return "path";
    case GenKind::Cycle: return "cycle";
    case GenKind::Star: return "star";
    case GenKind::Complete: return "complete";
    case GenKind::Petersen: return "petersen";
    case GenKind::Wheel: return "wheel";
    case GenKind::SmallPivotGadget: return "small-pivot-gadget";
    }
    return "?";
}

inline GenKind parse_gen_kind(const std::string& s)
{
    for (GenKind k : {GenKind::Random3d, GenKind::Path, GenKind::Cycle, GenKind::Star, GenKind::Complete,
             GenKind::Petersen, GenKind::Wheel, GenKind::SmallPivotGadget})
        if (s == gen_kind_name(k))
            return k;
    fail(ErrorCode::BadSpec, "unknown generator kind '" + s + "'");
}

namespace gen_detail {

// Unbiased bounded draw on top of the standard-specified mt19937_64 stream;
// avoids the unspecified std::uniform_int_distribution mapping so outputs
// are identical across platforms.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n)
{
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

} // namespace gen_detail

// Deterministic graph for (kind, n, seed). random3d attaches vertex i to
// min(i, draw 0..back_degree) distinct earlier vertices, which keeps the
// output 3-degenerate by construction.
inline Graph generate(const GenSpec& spec)
{
    const int n = spec.n;
    std::vector<VertexPair> edges;
    switch (spec.kind) {
    case GenKind::Random3d: {
        if (n < 0)
            fail(ErrorCode::BadSpec, "random3d needs n >= 0");
        if (spec.back_degree < 0 || spec.back_degree > 3)
            fail(ErrorCode::BadSpec, "random3d back_degree must be in 0..3");
        std::mt19937_64 rng(spec.seed);
        for (int i = 1; i < n; ++i) {
            int want = static_cast<int>(gen_detail::bounded(rng, static_cast<std::uint64_t>(spec.back_degree) + 1));
            want = std::min(want, i);
            std::vector<char> used(static_cast<size_t>(i), 0);
            for (int t = 0; t < want; ++t) {
                int j;
                do {
                    j = static_cast<int>(gen_detail::bounded(rng, static_cast<std::uint64_t>(i)));
                } while (used[static_cast<size_t>(j)]);
                used[static_cast<size_t>(j)] = 1;
                edges.push_back(make_pair_norm(j, i));
            }
        }
        break;
    }
    case GenKind::Path:
        if (n < 1)
            fail(ErrorCode::BadSpec, "path needs n >= 1");
        for (int i = 0; i + 1 < n; ++i)
            edges.push_back({i, i + 1});
        break;
    case GenKind::Cycle:
        if (n < 3)
            fail(ErrorCode::BadSpec, "cycle needs n >= 3");
        for (int i = 0; i < n; ++i)
            edges.push_back(make_pair_norm(i, (i + 1) % n));
        break;
    case GenKind::Star:
        if (n < 2)
            fail(ErrorCode::BadSpec, "star needs n >= 2");
        for (int i = 1; i < n; ++i)
            edges.push_back({0, i});
        break;
    case GenKind::Complete:
        if (n < 1)
            fail(ErrorCode::BadSpec, "complete needs n >= 1");
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                edges.push_back({u, v});
        break;
    case GenKind::Petersen:
        if (n != 10)
            fail(ErrorCode::BadSpec, "petersen needs n = 10");
        for (int i = 0; i < 5; ++i) {
            edges.push_back(make_pair_norm(i, (i + 1) % 5));
            edges.push_back({i, i + 5});
            edges.push_back(make_pair_norm(5 + i, 5 + (i + 2) % 5));
        }
        break;
    case GenKind::Wheel:
        if (n < 4)
            fail(ErrorCode::BadSpec, "wheel needs n >= 4");
        for (int i = 1; i < n; ++i) {
            edges.push_back({0, i});
            edges.push_back(make_pair_norm(i, i == n - 1 ? 1 : i + 1));
        }
        break;
    case GenKind::SmallPivotGadget: {
        // K4 core {0,1,2,3}; vertex 4 pends from 0, making 0 the unique
        // minimum-id degree-4 vertex of the peeled core with one low
        // neighbor. The remaining n-5 vertices pend round-robin from
        // 1,2,3; n = 8 gives the base gadget, n = 11 raises the core
        // degrees to 5.
        if (n < 8)
            fail(ErrorCode::BadSpec, "small-pivot-gadget needs n >= 8");
        for (int u = 0; u < 4; ++u)
            for (int v = u + 1; v < 4; ++v)
                edges.push_back({u, v});
        edges.push_back({0, 4});
        for (int i = 5; i < n; ++i)
            edges.push_back(make_pair_norm(1 + (i - 5) % 3, i));
        break;
    }
    }
    return build_graph(n, edges);
}

// Greedy seeded matching over nonadjacent degree-2 vertices; the result
// always validates against g.
inline Support random_support(const Graph& g, std::uint64_t seed, int max_pairs)
{
    std::vector<int> deg2;
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) == 2)
            deg2.push_back(v);
    std::mt19937_64 rng(seed);
    for (size_t i = deg2.size(); i > 1; --i)
        std::swap(deg2[i - 1], deg2[gen_detail::bounded(rng, i)]);
    Support sup;
    std::vector<char> used(static_cast<size_t>(g.n()), 0);
    for (size_t i = 0; i < deg2.size() && static_cast<int>(sup.pairs.size()) < max_pairs; ++i) {
        int u = deg2[i];
        if (used[static_cast<size_t>(u)])
            continue;
        for (size_t j = i + 1; j < deg2.size(); ++j) {
            int w = deg2[j];
            if (used[static_cast<size_t>(w)] || g.has_edge(u, w))
                continue;
            sup.pairs.push_back(make_pair_norm(u, w));
            used[static_cast<size_t>(u)] = used[static_cast<size_t>(w)] = 1;
            break;
        }
    }
    return sup;
}

} // namespace avdtc

#endif
