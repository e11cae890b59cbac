#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fourblock/rotation_graph.hpp"

namespace fourblock {

// Rotation format (UTF-8, line oriented, '#' starts a comment line):
//   n m
//   outer u v          -- directed edge (u -> v) with the outer face to its left
//   <vertex-id>: w1 w2 ... wk   -- neighbors in CCW order, one line per vertex

namespace detail {

inline bool is_blank_or_comment(std::string_view line) {
    for (char c : line) {
        if (c == '#') return true;
        if (c != ' ' && c != '\t' && c != '\r') return false;
    }
    return true;
}

inline bool parse_u32(std::string_view tok, std::uint32_t& out) {
    if (tok.empty()) return false;
    std::uint64_t v = 0;
    for (char c : tok) {
        if (c < '0' || c > '9') return false;
        v = v * 10 + static_cast<std::uint64_t>(c - '0');
        if (v > 0xFFFFFFFFull) return false;
    }
    out = static_cast<std::uint32_t>(v);
    return true;
}

inline std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

} // namespace detail

inline RotationGraph parse_rotation_graph(std::string_view text) {
    using detail::parse_u32;
    using detail::tokens;

    std::vector<std::pair<std::size_t, std::string_view>> lines; // (line number, content)
    {
        std::size_t no = 0, pos = 0;
        while (pos <= text.size()) {
            std::size_t end = text.find('\n', pos);
            if (end == std::string_view::npos) end = text.size();
            ++no;
            std::string_view line = text.substr(pos, end - pos);
            if (!detail::is_blank_or_comment(line)) lines.emplace_back(no, line);
            pos = end + 1;
            if (end == text.size()) break;
        }
    }
    auto fail = [](std::size_t no, const std::string& msg) -> void {
        throw parse_error("line " + std::to_string(no) + ": " + msg);
    };
    if (lines.size() < 2) throw parse_error("document too short");

    std::uint32_t n = 0, m = 0;
    {
        auto tk = tokens(lines[0].second);
        if (tk.size() != 2 || !parse_u32(tk[0], n) || !parse_u32(tk[1], m))
            fail(lines[0].first, "expected 'n m'");
    }
    std::uint32_t outer_u = 0, outer_v = 0;
    {
        auto tk = tokens(lines[1].second);
        if (tk.size() != 3 || tk[0] != "outer" || !parse_u32(tk[1], outer_u) || !parse_u32(tk[2], outer_v))
            fail(lines[1].first, "expected 'outer u v'");
    }
    if (lines.size() != 2 + n)
        throw parse_error("expected " + std::to_string(n) + " vertex lines, found " +
                          std::to_string(lines.size() - 2));

    RotationGraph g;
    std::unordered_map<std::uint32_t, VertexId> by_external;
    by_external.reserve(n * 2);

    struct RawLine {
        std::size_t no;
        VertexId v;
        std::vector<std::uint32_t> neighbors;
    };
    std::vector<RawLine> raw;
    raw.reserve(n);

    for (std::size_t i = 0; i < n; ++i) {
        auto [no, line] = lines[2 + i];
        auto tk = tokens(line);
        if (tk.empty() || tk[0].empty() || tk[0].back() != ':')
            fail(no, "malformed vertex line (expected '<id>: w1 w2 ...')");
        std::uint32_t ext = 0;
        if (!parse_u32(tk[0].substr(0, tk[0].size() - 1), ext))
            fail(no, "malformed vertex id");
        if (by_external.count(ext))
            fail(no, "vertex id " + std::to_string(ext) + " declared twice");
        VertexId v = g.add_vertex(ext);
        by_external.emplace(ext, v);
        RawLine rl{no, v, {}};
        rl.neighbors.reserve(tk.size() - 1);
        for (std::size_t t = 1; t < tk.size(); ++t) {
            std::uint32_t w = 0;
            if (!parse_u32(tk[t], w)) fail(no, "malformed neighbor id");
            rl.neighbors.push_back(w);
        }
        raw.push_back(std::move(rl));
    }

    // pair up half-edges; the first sighting of {u,v} allocates the pair
    std::unordered_map<std::uint64_t, HalfEdgeId> open; // pending twin slot
    std::unordered_map<std::uint64_t, char> closed;
    open.reserve(m * 2);
    std::size_t edges_made = 0;
    for (const RawLine& rl : raw) {
        std::vector<std::uint32_t> dup_stamp; // heads already seen at this tail
        for (std::uint32_t wext : rl.neighbors) {
            auto it = by_external.find(wext);
            if (it == by_external.end())
                fail(rl.no, "unknown vertex id " + std::to_string(wext));
            VertexId w = it->second;
            VertexId v = rl.v;
            std::uint64_t key = (static_cast<std::uint64_t>(std::min(v, w)) << 32) |
                                static_cast<std::uint64_t>(std::max(v, w));
            HalfEdgeId h;
            if (auto slot = open.find(key); slot != open.end() && g.tail(slot->second) == v &&
                                            g.head(slot->second) == w) {
                h = slot->second;
                open.erase(slot);
                closed.emplace(key, 1);
            } else if (slot != open.end() || closed.count(key)) {
                fail(rl.no, "duplicate neighbor " + std::to_string(wext) + " at vertex " +
                                std::to_string(g.origin(v)));
            } else {
                h = g.new_edge(v, w);
                open.emplace(key, RotationGraph::twin(h));
                ++edges_made;
            }
            g.attach_back(h);
        }
    }
    if (!open.empty()) {
        HalfEdgeId h = open.begin()->second;
        throw parse_error("asymmetric adjacency: " + std::to_string(g.origin(g.head(h))) +
                          " lists " + std::to_string(g.origin(g.tail(h))) +
                          " but not vice versa");
    }
    if (edges_made != m)
        throw parse_error("edge count mismatch: declared " + std::to_string(m) + ", found " +
                          std::to_string(edges_made));

    auto u_it = by_external.find(outer_u);
    auto v_it = by_external.find(outer_v);
    HalfEdgeId outer = kNone;
    if (u_it != by_external.end() && v_it != by_external.end())
        outer = g.half_between(u_it->second, v_it->second);
    if (outer == kNone)
        throw parse_error("declared outer edge (" + std::to_string(outer_u) + "," +
                          std::to_string(outer_v) + ") absent");
    g.set_outer_half_edge(outer);
    return g;
}

inline std::string serialize_rotation_graph(const RotationGraph& g) {
    std::ostringstream out;
    out << g.num_vertices() << ' ' << g.num_edges() << '\n';
    out << "outer " << g.origin(g.tail(g.outer_half_edge())) << ' '
        << g.origin(g.head(g.outer_half_edge())) << '\n';
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        out << g.origin(v) << ':';
        HalfEdgeId h = g.first_half(v);
        if (h != kNone) {
            do {
                out << ' ' << g.origin(g.head(h));
                h = g.ccw_next(h);
            } while (h != g.first_half(v));
        }
        out << '\n';
    }
    return out.str();
}

} // namespace fourblock
