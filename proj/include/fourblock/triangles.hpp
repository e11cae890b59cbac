#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fourblock/rotation_graph.hpp"

namespace fourblock {

/// A triangle by its three vertices plus the annotations the ordering
/// phase fills in. Corners are canonicalized ascending; edges[k] is the
/// edge between corners[k] and corners[(k+1)%3].
struct TriangleRecord {
    std::array<VertexId, 3> corners{kNone, kNone, kNone};
    std::array<EdgeId, 3> edges{kNone, kNone, kNone};
    HalfEdgeId last_edge = kNone;       // oriented (v->w) traversed last in DFS2
    std::uint32_t time = kNone;         // edge_time of last_edge
    std::uint32_t internal_angle = kNone;
    HalfEdgeId reference_edge = kNone;  // interior of the triangle to its left
};

struct TriangleScanStats {
    std::uint64_t steps = 0; // inner-loop adjacency touches
};

namespace detail {

/// Both-rotational-directions adjacency of positions i, j in a list of
/// length d. (d + i - j + 1) % d is 0 or 2 exactly when |i-j| = 1 (mod d).
inline bool positions_adjacent(std::uint32_t i, std::uint32_t j, std::uint32_t d) {
    return (d + i - j + 1) % d <= 2;
}

} // namespace detail

/// Lists every 3-clique exactly once via the degree-ordered
/// neighbor-marking scan. Vertices are retired logically (flag) so the
/// graph stays untouched. Runs in O(arboricity * m). The scan works on a
/// throwaway CSR copy of the adjacency (in rotation order); the cyclic
/// lists are too cache-hostile for the tight inner loop.
inline std::vector<TriangleRecord> list_all_triangles(const RotationGraph& g,
                                                      TriangleScanStats* stats = nullptr) {
    const std::size_t n = g.num_vertices();
    std::vector<TriangleRecord> out;
    TriangleScanStats local;

    std::vector<std::uint32_t> offs(n + 1, 0);
    for (VertexId v = 0; v < n; ++v) offs[v + 1] = offs[v] + g.degree(v);
    std::vector<HalfEdgeId> halves(offs[n]);
    std::vector<VertexId> heads(offs[n]);
    {
        // one sequential pass; the scan does not care about rotation order
        std::vector<std::uint32_t> cur(offs.begin(), offs.end() - 1);
        for (HalfEdgeId h = 0; h < g.num_half_edges(); ++h) {
            std::uint32_t pos = cur[g.tail(h)]++;
            halves[pos] = h;
            heads[pos] = g.head(h);
        }
    }

    // counting sort by non-increasing degree
    std::vector<VertexId> order(n);
    {
        std::uint32_t max_deg = 0;
        for (VertexId v = 0; v < n; ++v) max_deg = std::max(max_deg, g.degree(v));
        std::vector<std::uint32_t> counts(max_deg + 1, 0);
        for (VertexId v = 0; v < n; ++v) ++counts[max_deg - g.degree(v)];
        std::uint32_t run = 0;
        for (auto& c : counts) {
            std::uint32_t tmp = c;
            c = run;
            run += tmp;
        }
        for (VertexId v = 0; v < n; ++v) order[counts[max_deg - g.degree(v)]++] = v;
    }

    std::vector<char> marked(n, 0), retired(n, 0);
    std::vector<HalfEdgeId> to_marked(n, kNone); // half v->w for marked w

    for (VertexId v : order) {
        for (std::uint32_t i = offs[v]; i < offs[v + 1]; ++i) {
            marked[heads[i]] = 1;
            to_marked[heads[i]] = halves[i];
        }
        for (std::uint32_t i = offs[v]; i < offs[v + 1]; ++i) {
            HalfEdgeId h = halves[i];
            VertexId u = heads[i];
            if (!retired[u]) {
                for (std::uint32_t j = offs[u]; j < offs[u + 1]; ++j) {
                    ++local.steps;
                    HalfEdgeId k = halves[j];
                    VertexId w = heads[j];
                    if (!retired[w] && marked[w]) {
                        TriangleRecord t;
                        VertexId a = v, b = u, c = w;
                        if (a > b) std::swap(a, b);
                        if (b > c) std::swap(b, c);
                        if (a > b) std::swap(a, b);
                        t.corners = {a, b, c};
                        auto edge_between = [&](VertexId x, VertexId y) -> EdgeId {
                            if ((x == v && y == u) || (x == u && y == v))
                                return RotationGraph::edge_of(h);
                            if ((x == u && y == w) || (x == w && y == u))
                                return RotationGraph::edge_of(k);
                            return RotationGraph::edge_of(to_marked[w]);
                        };
                        t.edges = {edge_between(a, b), edge_between(b, c), edge_between(c, a)};
                        out.push_back(t);
                    }
                }
            }
            marked[u] = 0;
        }
        retired[v] = 1;
    }
    if (stats) *stats = local;
    return out;
}

/// True iff at some corner the half-edges toward the other two corners are
/// cyclically adjacent (either rotational direction) -- on a valid
/// triangulation this is exactly "the triangle bounds a face".
inline bool is_facial(const RotationGraph& g, const std::array<VertexId, 3>& t) {
    for (int i = 0; i < 3; ++i) {
        VertexId a = t[i], b = t[(i + 1) % 3], c = t[(i + 2) % 3];
        HalfEdgeId hb = g.half_between(a, b);
        HalfEdgeId hc = g.half_between(a, c);
        if (hb == kNone || hc == kNone)
            throw std::invalid_argument("is_facial: not a triangle of g");
        if (detail::positions_adjacent(g.index_in_tail(hb), g.index_in_tail(hc), g.degree(a)))
            return true;
    }
    return false;
}

/// The list T of separating triangles: all triangles minus face boundaries.
/// The facial filter runs inside the scan using one corner's positions.
inline std::vector<TriangleRecord> separating_triangles(const RotationGraph& g,
                                                        TriangleScanStats* stats = nullptr) {
    std::vector<TriangleRecord> all = list_all_triangles(g, stats);
    std::vector<TriangleRecord> sep;
    for (const TriangleRecord& t : all) {
        // positions of the two other corners at corner[0]
        VertexId a = t.corners[0];
        HalfEdgeId hb = RotationGraph::half_of(t.edges[0]);
        if (g.tail(hb) != a) hb = RotationGraph::twin(hb);
        HalfEdgeId hc = RotationGraph::half_of(t.edges[2]);
        if (g.tail(hc) != a) hc = RotationGraph::twin(hc);
        if (!detail::positions_adjacent(g.index_in_tail(hb), g.index_in_tail(hc), g.degree(a)))
            sep.push_back(t);
    }
    return sep;
}

} // namespace fourblock
