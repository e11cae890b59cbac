#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fourblock/rotation_graph.hpp"
#include "fourblock/triangles.hpp"

namespace fourblock {

struct DfsVertexState {
    std::uint32_t depth = kNone;
    HalfEdgeId parent_half = kNone;        // half v -> parent; kNone for the root
    HalfEdgeId active_child_half = kNone;  // half v -> child currently on the stack
};

enum class EdgeKind : std::uint8_t { Unset, Tree, Back };

struct DfsEdgeState {
    HalfEdgeId oriented = kNone; // half whose tail is the DFS tail of the edge
    EdgeKind kind = EdgeKind::Unset;
    bool left_back = false;      // meaningful for back edges only
    std::uint32_t lowpt = kNone;
    std::uint32_t angle = kNone;
    EdgeId outermost_return_edge = kNone;
    std::uint32_t edge_time = kNone; // set by DFS2
};

struct OrderingStats {
    std::uint64_t dfs1_steps = 0;
    std::uint64_t dfs2_steps = 0;
    std::uint64_t sort_placements = 0;
    std::uint64_t total() const { return dfs1_steps + dfs2_steps + sort_placements; }
};

struct DfsResult {
    std::vector<DfsVertexState> vertex;
    std::vector<DfsEdgeState> edge;
    // attributes the virtual parent edge of the root inherited; recorded
    // but excluded from edge sorting
    std::uint32_t virtual_lowpt = kNone;
    std::uint32_t virtual_angle = kNone;
    EdgeId virtual_ore = kNone;
    OrderingStats stats;
};

/// Per-vertex outgoing-edge lists after the lexicographic
/// (-lowpt, angle) sort, stored CSR-style.
struct EdgeOrder {
    std::vector<EdgeId> edges;            // grouped by tail vertex
    std::vector<std::uint32_t> offsets;   // size n+1
};

/// Separating triangles sorted innermost-to-outermost, with the edge order
/// that produced the traversal.
struct OrderedTriangleList {
    std::vector<TriangleRecord> triangles;
    EdgeOrder edge_order;
    OrderingStats stats;
};

namespace detail {

/// Angle bookkeeping in doubled index space so the root's virtual parent
/// edge (which sits between two real entries) has an integer position.
struct AnglesAt {
    const RotationGraph& g;

    std::uint32_t pos2(HalfEdgeId h) const { return 2 * g.index_in_tail(h); }

    /// Doubled position of the root's virtual parent edge: just CCW of the
    /// outer half-edge, i.e. inside the outer-face corner at the root.
    std::uint32_t virtual_pos2() const { return 2 * g.index_in_tail(g.outer_half_edge()) + 1; }

    std::uint32_t turn2(VertexId at, std::uint32_t from2, std::uint32_t to2) const {
        std::uint32_t d2 = 2 * g.degree(at);
        return (to2 + d2 - from2) % d2;
    }
};

} // namespace detail

/// First DFS from the root (tail of the outer half-edge). Orients every
/// edge, classifies tree/back, and computes depths, lowpoints, angles and
/// outermost return edges. Iterative; neighbor iteration starts at the
/// entry after the parent edge's twin (after the virtual edge's corner
/// position for the root).
inline DfsResult dfs1(const RotationGraph& g) {
    const std::size_t n = g.num_vertices();
    const std::size_t m = g.num_edges();
    DfsResult r;
    r.vertex.assign(n, DfsVertexState{});
    r.edge.assign(m, DfsEdgeState{});
    detail::AnglesAt ang{g};

    const VertexId root = g.root();
    r.vertex[root].depth = 0;

    struct Frame {
        VertexId v;
        HalfEdgeId cursor;
        std::uint32_t remaining;
        EdgeId finished_child_edge; // tree edge whose subtree just closed
    };
    std::vector<Frame> stack;
    stack.push_back({root, g.ccw_next(g.outer_half_edge()), g.degree(root), kNone});

    // (-lowpt, angle) lexicographic improvement test
    auto better = [&](EdgeId cand, EdgeId cur) -> bool {
        if (cur == kNone) return true;
        const DfsEdgeState& a = r.edge[cand];
        const DfsEdgeState& b = r.edge[cur];
        if (a.lowpt != b.lowpt) return a.lowpt < b.lowpt;
        return a.angle > b.angle;
    };
    auto update_parent_ore = [&](VertexId v, EdgeId done) {
        EdgeId cand = r.edge[done].outermost_return_edge;
        HalfEdgeId ph = r.vertex[v].parent_half;
        if (ph == kNone) { // v is the root; its parent edge is virtual
            if (r.virtual_ore == kNone || better(cand, r.virtual_ore)) r.virtual_ore = cand;
        } else {
            EdgeId pe = RotationGraph::edge_of(ph);
            EdgeId& slot = r.edge[pe].outermost_return_edge;
            if (slot == kNone || better(cand, slot)) slot = cand;
        }
    };

    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.finished_child_edge != kNone) {
            update_parent_ore(f.v, f.finished_child_edge);
            f.finished_child_edge = kNone;
        }
        if (f.remaining == 0) {
            // v is done; its parent edge inherits from its outermost return edge
            VertexId v = f.v;
            HalfEdgeId ph = r.vertex[v].parent_half;
            if (ph == kNone) {
                if (r.virtual_ore != kNone) {
                    r.virtual_lowpt = r.edge[r.virtual_ore].lowpt;
                    r.virtual_angle = r.edge[r.virtual_ore].angle;
                }
                stack.pop_back();
            } else {
                EdgeId pe = RotationGraph::edge_of(ph);
                EdgeId ore = r.edge[pe].outermost_return_edge;
                if (ore == kNone)
                    throw std::logic_error("dfs1: tree edge without return edge (graph not biconnected?)");
                r.edge[pe].lowpt = r.edge[ore].lowpt;
                r.edge[pe].angle = r.edge[ore].angle;
                stack.pop_back();
                stack.back().finished_child_edge = pe;
            }
            continue;
        }

        HalfEdgeId h = f.cursor;
        f.cursor = g.ccw_next(h);
        --f.remaining;
        ++r.stats.dfs1_steps;

        EdgeId e = RotationGraph::edge_of(h);
        if (r.edge[e].kind != EdgeKind::Unset) continue; // already oriented
        VertexId v = f.v;
        VertexId w = g.head(h);
        r.edge[e].oriented = h;

        if (r.vertex[w].depth == kNone) {
            // tree edge
            r.edge[e].kind = EdgeKind::Tree;
            r.vertex[w].depth = r.vertex[v].depth + 1;
            r.vertex[w].parent_half = RotationGraph::twin(h);
            r.vertex[v].active_child_half = h;
            stack.push_back({w, g.ccw_next(RotationGraph::twin(h)), g.degree(w), kNone});
            // parent-ORE update happens when this subtree closes
        } else {
            // back edge: classify left/right at the ancestor w
            r.edge[e].kind = EdgeKind::Back;
            r.edge[e].lowpt = r.vertex[w].depth;
            r.edge[e].outermost_return_edge = e;

            HalfEdgeId wv = RotationGraph::twin(h);
            HalfEdgeId wc = r.vertex[w].active_child_half;
            std::uint32_t pos_v = ang.pos2(wv);
            std::uint32_t pos_c = ang.pos2(wc);
            std::uint32_t pos_p = (r.vertex[w].parent_half == kNone)
                                      ? ang.virtual_pos2()
                                      : ang.pos2(r.vertex[w].parent_half);
            std::uint32_t vwc = ang.turn2(w, pos_v, pos_c);
            std::uint32_t pwc = ang.turn2(w, pos_p, pos_c);
            if (vwc < pwc) {
                r.edge[e].left_back = true;
                r.edge[e].angle = vwc / 2;
            } else {
                r.edge[e].left_back = false;
                r.edge[e].angle = ang.turn2(w, pos_c, pos_v) / 2;
            }
            update_parent_ore(v, e);
        }
    }

    for (VertexId v = 0; v < n; ++v)
        if (r.vertex[v].depth == kNone)
            throw std::invalid_argument("dfs1: graph is not connected");
    return r;
}

/// Two stable counting-sort passes over all oriented edges (angle
/// ascending, then |V| - lowpt ascending) followed by a stable partition
/// by tail vertex. Linear time; matches the LSD-radix-sort reading.
inline EdgeOrder sort_edges(const RotationGraph& g, DfsResult& dfs) {
    const std::size_t n = g.num_vertices();
    const std::size_t m = g.num_edges();
    EdgeOrder order;

    std::uint32_t max_angle = 0;
    for (EdgeId e = 0; e < m; ++e) max_angle = std::max(max_angle, dfs.edge[e].angle);

    std::vector<std::uint32_t> counts(std::max<std::size_t>(max_angle + 2, n + 2), 0);
    std::vector<EdgeId> pass_a(m), pass_b(m);

    auto counting_sort = [&](const std::vector<EdgeId>& in, std::vector<EdgeId>& out,
                             auto key, std::uint32_t key_bound) {
        std::fill(counts.begin(), counts.begin() + key_bound + 1, 0);
        for (EdgeId e : in) ++counts[key(e)];
        std::uint32_t run = 0;
        for (std::uint32_t k = 0; k <= key_bound; ++k) {
            std::uint32_t tmp = counts[k];
            counts[k] = run;
            run += tmp;
        }
        for (EdgeId e : in) {
            out[counts[key(e)]++] = e;
            ++dfs.stats.sort_placements;
        }
    };

    std::vector<EdgeId> ids(m);
    for (EdgeId e = 0; e < m; ++e) ids[e] = e;
    counting_sort(ids, pass_a, [&](EdgeId e) { return dfs.edge[e].angle; }, max_angle);
    counting_sort(pass_a, pass_b,
                  [&](EdgeId e) { return static_cast<std::uint32_t>(n) - dfs.edge[e].lowpt; },
                  static_cast<std::uint32_t>(n));

    // stable partition by tail
    order.offsets.assign(n + 1, 0);
    for (EdgeId e : pass_b) ++order.offsets[g.tail(dfs.edge[e].oriented) + 1];
    for (std::size_t v = 0; v < n; ++v) order.offsets[v + 1] += order.offsets[v];
    order.edges.resize(m);
    std::vector<std::uint32_t> cursor(order.offsets.begin(), order.offsets.end() - 1);
    for (EdgeId e : pass_b) {
        order.edges[cursor[g.tail(dfs.edge[e].oriented)]++] = e;
        ++dfs.stats.sort_placements;
    }
    return order;
}

/// Second DFS following the sorted edge order; stamps every oriented edge
/// with a strictly increasing traversal time. A tree edge is recognized by
/// depth(head) == depth(tail) + 1, which reproduces DFS1's partition.
inline void dfs2(const RotationGraph& g, DfsResult& dfs, const EdgeOrder& order) {
    struct Frame {
        VertexId v;
        std::uint32_t pos;
    };
    std::vector<Frame> stack;
    stack.push_back({g.root(), order.offsets[g.root()]});
    std::uint32_t now = 0;
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.pos == order.offsets[f.v + 1]) {
            stack.pop_back();
            continue;
        }
        EdgeId e = order.edges[f.pos++];
        ++dfs.stats.dfs2_steps;
        dfs.edge[e].edge_time = now++;
        VertexId w = g.head(dfs.edge[e].oriented);
        if (dfs.vertex[w].depth == dfs.vertex[f.v].depth + 1)
            stack.push_back({w, order.offsets[w]});
    }
}

/// Assigns last edge, discovery time, internal angle and reference edge to
/// every separating triangle, then orders them by two stable counting
/// sorts: internal angle first, discovery time second.
inline std::vector<TriangleRecord> sort_triangles(const RotationGraph& g, const DfsResult& dfs,
                                                  std::vector<TriangleRecord> triangles,
                                                  OrderingStats* stats = nullptr) {
    const std::size_t m = g.num_edges();
    std::uint32_t max_angle = 0;
    for (TriangleRecord& t : triangles) {
        EdgeId last = t.edges[0];
        for (EdgeId e : t.edges)
            if (dfs.edge[e].edge_time > dfs.edge[last].edge_time) last = e;
        if (dfs.edge[last].kind != EdgeKind::Back)
            throw std::logic_error("sort_triangles: last traversed edge of a separating "
                                   "triangle must be a back edge");
        HalfEdgeId vw = dfs.edge[last].oriented;
        VertexId v = g.tail(vw), w = g.head(vw);
        VertexId u = t.corners[0] ^ t.corners[1] ^ t.corners[2] ^ v ^ w;

        // half-edge w -> u along the triangle
        HalfEdgeId wu = kNone;
        for (EdgeId e : t.edges) {
            HalfEdgeId h = RotationGraph::half_of(e);
            if (g.tail(h) == w && g.head(h) == u) wu = h;
            if (g.tail(RotationGraph::twin(h)) == w && g.head(RotationGraph::twin(h)) == u)
                wu = RotationGraph::twin(h);
        }
        HalfEdgeId wv = RotationGraph::twin(vw);

        t.last_edge = vw;
        t.time = dfs.edge[last].edge_time;
        if (dfs.edge[last].left_back) {
            t.reference_edge = wv; // (w, v)
            t.internal_angle = g.angle_size(wv, wu);
        } else {
            t.reference_edge = vw; // (v, w)
            t.internal_angle = g.angle_size(wu, wv);
        }
        max_angle = std::max(max_angle, t.internal_angle);
    }

    std::uint64_t placements = 0;
    std::vector<std::uint32_t> counts(std::max<std::size_t>(max_angle + 2, m + 1), 0);
    std::vector<std::uint32_t> idx(triangles.size()), tmp(triangles.size());
    for (std::uint32_t i = 0; i < idx.size(); ++i) idx[i] = i;
    auto counting_sort = [&](std::vector<std::uint32_t>& in, std::vector<std::uint32_t>& out,
                             auto key, std::uint32_t key_bound) {
        std::fill(counts.begin(), counts.begin() + key_bound + 1, 0);
        for (std::uint32_t i : in) ++counts[key(i)];
        std::uint32_t run = 0;
        for (std::uint32_t k = 0; k <= key_bound; ++k) {
            std::uint32_t c = counts[k];
            counts[k] = run;
            run += c;
        }
        for (std::uint32_t i : in) {
            out[counts[key(i)]++] = i;
            ++placements;
        }
    };
    if (!triangles.empty()) {
        counting_sort(idx, tmp, [&](std::uint32_t i) { return triangles[i].internal_angle; },
                      max_angle);
        counting_sort(tmp, idx, [&](std::uint32_t i) { return triangles[i].time; },
                      static_cast<std::uint32_t>(m - 1));
    }
    std::vector<TriangleRecord> out;
    out.reserve(triangles.size());
    for (std::uint32_t i : idx) out.push_back(triangles[i]);
    if (stats) stats->sort_placements += placements;
    return out;
}

/// Full Step 2: DFS1, edge sort, DFS2, triangle sort. The result order is
/// a linear extension of interior containment (innermost first).
inline OrderedTriangleList order_separating_triangles(const RotationGraph& g,
                                                      std::vector<TriangleRecord> triangles) {
    OrderedTriangleList out;
    DfsResult dfs = dfs1(g);
    out.edge_order = sort_edges(g, dfs);
    dfs2(g, dfs, out.edge_order);
    out.stats = dfs.stats;
    out.triangles = sort_triangles(g, dfs, std::move(triangles), &out.stats);
    return out;
}

} // namespace fourblock
