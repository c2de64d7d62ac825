#ifndef AVDTC_IO_HPP
#define AVDTC_IO_HPP

#include "avdtc/coloring.hpp"
#include "avdtc/errors.hpp"
#include "avdtc/graph.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace avdtc {

namespace detail {

[[noreturn]] inline void parse_fail(int line, const std::string& msg)
{
    fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + msg);
}

// Splits a line into whitespace-separated tokens.
inline std::vector<std::string> tokens(const std::string& line)
{
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string t;
    while (in >> t)
        out.push_back(t);
    return out;
}

inline long long parse_int(const std::string& t, int line)
{
    size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(t, &pos);
    } catch (const std::exception&) {
        parse_fail(line, "expected integer, got '" + t + "'");
    }
    if (pos != t.size())
        parse_fail(line, "expected integer, got '" + t + "'");
    return v;
}

} // namespace detail

// Graph file format: optional comment lines starting with 'c', one header
// 'p edge <n> <m>', then m lines 'e <u> <v>' with 1-indexed endpoints.
inline Graph read_dimacs(std::istream& in)
{
    int n = -1;
    long long m = -1;
    std::vector<VertexPair> edges;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto tok = detail::tokens(line);
        if (tok.empty() || tok[0] == "c")
            continue;
        if (tok[0] == "p") {
            if (n >= 0)
                detail::parse_fail(lineno, "duplicate problem line");
            if (tok.size() != 4 || tok[1] != "edge")
                detail::parse_fail(lineno, "expected 'p edge <n> <m>'");
            long long nn = detail::parse_int(tok[2], lineno);
            long long mm = detail::parse_int(tok[3], lineno);
            if (nn < 0 || mm < 0)
                detail::parse_fail(lineno, "negative counts in problem line");
            n = static_cast<int>(nn);
            m = mm;
        } else if (tok[0] == "e") {
            if (n < 0)
                detail::parse_fail(lineno, "edge line before problem line");
            if (tok.size() != 3)
                detail::parse_fail(lineno, "expected 'e <u> <v>'");
            long long u = detail::parse_int(tok[1], lineno);
            long long v = detail::parse_int(tok[2], lineno);
            if (u < 1 || u > n || v < 1 || v > n)
                detail::parse_fail(lineno, "vertex out of range 1.." + std::to_string(n));
            edges.push_back(make_pair_norm(static_cast<int>(u - 1), static_cast<int>(v - 1)));
        } else {
            detail::parse_fail(lineno, "unrecognized line '" + tok[0] + "'");
        }
    }
    if (n < 0)
        fail(ErrorCode::ParseError, "missing problem line");
    if (static_cast<long long>(edges.size()) != m)
        fail(ErrorCode::ParseError,
            "header declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
    try {
        return build_graph(n, edges);
    } catch (const Error& e) {
        fail(ErrorCode::ParseError, e.what());
    }
}

inline void write_dimacs(std::ostream& out, const Graph& g)
{
    out << "p edge " << g.n() << " " << g.m() << "\n";
    for (const auto& [u, v] : g.edges())
        out << "e " << u + 1 << " " << v + 1 << "\n";
}

// Support file format: lines 's <u> <v>', 1-indexed; comments and blank
// lines allowed as in the graph format.
inline Support read_support(std::istream& in, const Graph& g)
{
    Support sup;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto tok = detail::tokens(line);
        if (tok.empty() || tok[0] == "c")
            continue;
        if (tok[0] != "s" || tok.size() != 3)
            detail::parse_fail(lineno, "expected 's <u> <v>'");
        long long u = detail::parse_int(tok[1], lineno);
        long long v = detail::parse_int(tok[2], lineno);
        if (u < 1 || u > g.n() || v < 1 || v > g.n())
            detail::parse_fail(lineno, "vertex out of range 1.." + std::to_string(g.n()));
        sup.pairs.push_back(make_pair_norm(static_cast<int>(u - 1), static_cast<int>(v - 1)));
    }
    return sup;
}

inline void write_support(std::ostream& out, const Support& sup)
{
    for (const auto& [u, v] : sup.pairs)
        out << "s " << u + 1 << " " << v + 1 << "\n";
}

// Coloring file format: header 'k <universe>', lines 'v <id> <color>' for
// colored vertices and 'E <u> <v> <color>' for colored edges, 1-indexed.
// Color 0 is the uncolored sentinel and is forbidden in files.
inline PartialColoring read_coloring(std::istream& in, const Graph& g)
{
    int universe = -1;
    PartialColoring col;
    std::string line;
    int lineno = 0;
    auto parse_color = [&](const std::string& t, int ln) {
        long long c = detail::parse_int(t, ln);
        if (c < 1 || c > universe)
            detail::parse_fail(ln, "color out of range 1.." + std::to_string(universe));
        return static_cast<int>(c);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto tok = detail::tokens(line);
        if (tok.empty() || tok[0] == "c")
            continue;
        if (tok[0] == "k") {
            if (universe >= 0)
                detail::parse_fail(lineno, "duplicate universe line");
            if (tok.size() != 2)
                detail::parse_fail(lineno, "expected 'k <universe_size>'");
            long long k = detail::parse_int(tok[1], lineno);
            if (k < 1)
                detail::parse_fail(lineno, "universe size must be positive");
            universe = static_cast<int>(k);
            col = PartialColoring(universe, g.n(), g.m());
        } else if (tok[0] == "v") {
            if (universe < 0)
                detail::parse_fail(lineno, "vertex line before universe line");
            if (tok.size() != 3)
                detail::parse_fail(lineno, "expected 'v <id> <color>'");
            long long v = detail::parse_int(tok[1], lineno);
            if (v < 1 || v > g.n())
                detail::parse_fail(lineno, "vertex out of range 1.." + std::to_string(g.n()));
            col.set_vertex(static_cast<int>(v - 1), parse_color(tok[2], lineno));
        } else if (tok[0] == "E") {
            if (universe < 0)
                detail::parse_fail(lineno, "edge line before universe line");
            if (tok.size() != 4)
                detail::parse_fail(lineno, "expected 'E <u> <v> <color>'");
            long long u = detail::parse_int(tok[1], lineno);
            long long v = detail::parse_int(tok[2], lineno);
            if (u < 1 || u > g.n() || v < 1 || v > g.n())
                detail::parse_fail(lineno, "vertex out of range 1.." + std::to_string(g.n()));
            int e = g.edge_index(static_cast<int>(u - 1), static_cast<int>(v - 1));
            if (e < 0)
                detail::parse_fail(lineno, "no such edge (" + tok[1] + "," + tok[2] + ")");
            col.set_edge(e, parse_color(tok[3], lineno));
        } else {
            detail::parse_fail(lineno, "unrecognized line '" + tok[0] + "'");
        }
    }
    if (universe < 0)
        fail(ErrorCode::ParseError, "missing universe line");
    return col;
}

inline void write_coloring(std::ostream& out, const Graph& g, const PartialColoring& col)
{
    out << "k " << col.universe() << "\n";
    for (int v = 0; v < g.n(); ++v)
        if (int c = col.vertex_raw(v); c != 0)
            out << "v " << v + 1 << " " << c << "\n";
    for (int e = 0; e < g.m(); ++e)
        if (int c = col.edge_raw(e); c != 0) {
            auto [u, v] = g.edge(e);
            out << "E " << u + 1 << " " << v + 1 << " " << c << "\n";
        }
}

} // namespace avdtc

#endif
