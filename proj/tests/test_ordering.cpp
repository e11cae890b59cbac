#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "fourblock/oracle.hpp"
#include "fourblock/ordering.hpp"
#include "fourblock/triangles.hpp"

#include "support.hpp"

using namespace fourblock;

namespace {

using VPair = std::pair<std::uint32_t, std::uint32_t>; // (tail, head) by origin

VPair oriented_pair(const RotationGraph& g, const DfsResult& dfs, EdgeId e) {
    HalfEdgeId h = dfs.edge[e].oriented;
    return {g.origin(g.tail(h)), g.origin(g.head(h))};
}

EdgeId edge_between(const RotationGraph& g, std::uint32_t u, std::uint32_t v) {
    HalfEdgeId h = g.half_between(u, v);
    REQUIRE(h != kNone);
    return RotationGraph::edge_of(h);
}

/// Re-derives lowpoints, angles, left/right flags and outermost return
/// edges from the DFS tree by explicit fundamental-cycle enumeration, and
/// checks the implementation against them.
void check_dfs1_by_fundamental_cycles(const RotationGraph& g, const DfsResult& dfs) {
    const std::size_t m = g.num_edges();
    const VertexId root = g.root();

    struct Cand {
        std::uint32_t lowpt;
        std::uint32_t angle;
        EdgeId id;
    };
    std::vector<std::vector<Cand>> candidates(m);

    for (EdgeId b = 0; b < m; ++b) {
        if (dfs.edge[b].kind != EdgeKind::Back) continue;
        HalfEdgeId h = dfs.edge[b].oriented;
        VertexId v = g.tail(h), w = g.head(h);

        CHECK(dfs.edge[b].lowpt == dfs.vertex[w].depth);
        CHECK(dfs.vertex[w].depth < dfs.vertex[v].depth);
        CHECK(dfs.edge[b].angle > 0);
        CHECK(dfs.edge[b].angle < g.degree(w));

        // walk the tree path v -> w; c is the vertex met just before w
        VertexId cur = v, c = v;
        std::vector<EdgeId> path;
        while (cur != w) {
            HalfEdgeId ph = dfs.vertex[cur].parent_half;
            REQUIRE(ph != kNone);
            path.push_back(RotationGraph::edge_of(ph));
            c = cur;
            cur = g.head(ph);
        }
        for (EdgeId e : path) candidates[e].push_back({dfs.edge[b].lowpt, dfs.edge[b].angle, b});

        // left/right from the cyclic order of (parent, v, c) at w, with the
        // root's virtual parent edge placed just CCW of the outer half-edge
        std::uint32_t d2 = 2 * g.degree(w);
        std::uint32_t pos_v = 2 * g.index_in_tail(g.half_between(w, v));
        std::uint32_t pos_c = 2 * g.index_in_tail(g.half_between(w, c));
        std::uint32_t pos_p = (w == root)
                                  ? 2 * g.index_in_tail(g.outer_half_edge()) + 1
                                  : 2 * g.index_in_tail(dfs.vertex[w].parent_half);
        std::uint32_t vwc = (pos_c + d2 - pos_v) % d2;
        std::uint32_t pwc = (pos_c + d2 - pos_p) % d2;
        bool left = vwc < pwc;
        CHECK(dfs.edge[b].left_back == left);
        std::uint32_t want_angle = left ? vwc / 2 : ((pos_v + d2 - pos_c) % d2) / 2;
        CHECK(dfs.edge[b].angle == want_angle);
    }

    for (EdgeId e = 0; e < m; ++e) {
        if (dfs.edge[e].kind != EdgeKind::Tree) continue;
        REQUIRE(!candidates[e].empty());
        Cand best = candidates[e][0];
        for (const Cand& c : candidates[e]) {
            if (c.lowpt < best.lowpt || (c.lowpt == best.lowpt && c.angle > best.angle))
                best = c;
        }
        CHECK(dfs.edge[e].lowpt == best.lowpt);
        CHECK(dfs.edge[e].angle == best.angle);
        EdgeId ore = dfs.edge[e].outermost_return_edge;
        REQUIRE(ore != kNone);
        CHECK(dfs.edge[ore].lowpt == best.lowpt);
        CHECK(dfs.edge[ore].angle == best.angle);
        bool ore_is_candidate = false;
        for (const Cand& c : candidates[e]) ore_is_candidate |= c.id == ore;
        CHECK(ore_is_candidate);
    }
}

/// Comparison-sorted reference for the per-vertex outgoing edge lists:
/// stable sort of the edges in id order by (-lowpt, angle).
std::vector<std::vector<EdgeId>> reference_edge_order(const RotationGraph& g,
                                                      const DfsResult& dfs) {
    std::vector<std::vector<EdgeId>> by_tail(g.num_vertices());
    for (EdgeId e = 0; e < g.num_edges(); ++e)
        by_tail[g.tail(dfs.edge[e].oriented)].push_back(e);
    for (auto& list : by_tail)
        std::stable_sort(list.begin(), list.end(), [&](EdgeId a, EdgeId b) {
            if (dfs.edge[a].lowpt != dfs.edge[b].lowpt)
                return dfs.edge[a].lowpt > dfs.edge[b].lowpt;
            return dfs.edge[a].angle < dfs.edge[b].angle;
        });
    return by_tail;
}

/// Recursive reference DFS2 driven by the comparison-sorted lists.
void reference_dfs2(const RotationGraph& g, const DfsResult& dfs,
                    const std::vector<std::vector<EdgeId>>& lists, VertexId v,
                    std::uint32_t& now, std::vector<std::uint32_t>& time) {
    for (EdgeId e : lists[v]) {
        time[e] = now++;
        VertexId w = g.head(dfs.edge[e].oriented);
        if (dfs.vertex[w].depth == dfs.vertex[v].depth + 1)
            reference_dfs2(g, dfs, lists, w, now, time);
    }
}

} // namespace

TEST_CASE("dfs1 on the single triangle") {
    RotationGraph g = testsupport::triangle();
    DfsResult dfs = dfs1(g);
    int trees = 0, backs = 0;
    for (EdgeId e = 0; e < 3; ++e) {
        if (dfs.edge[e].kind == EdgeKind::Tree) ++trees;
        if (dfs.edge[e].kind == EdgeKind::Back) {
            ++backs;
            CHECK(dfs.edge[e].lowpt == 0);
        }
    }
    CHECK(trees == 2);
    CHECK(backs == 1);
}

TEST_CASE("dfs1 canon5 attribute table") {
    RotationGraph g = testsupport::canon5();
    DfsResult dfs = dfs1(g);

    std::map<std::uint32_t, std::uint32_t> depth;
    for (VertexId v = 0; v < g.num_vertices(); ++v) depth[g.origin(v)] = dfs.vertex[v].depth;
    CHECK(depth[1] == 0); // root b
    CHECK(depth[4] == 1); // e
    CHECK(depth[0] == 2); // a
    CHECK(depth[3] == 3); // d
    CHECK(depth[2] == 4); // c

    struct Want {
        std::uint32_t u, v;  // oriented tail, head (origins)
        EdgeKind kind;
        std::uint32_t lowpt, angle;
    };
    const Want table[] = {
        {1, 4, EdgeKind::Tree, 0, 3}, {4, 0, EdgeKind::Tree, 0, 3},
        {0, 3, EdgeKind::Tree, 0, 2}, {3, 2, EdgeKind::Tree, 0, 1},
        {0, 1, EdgeKind::Back, 0, 3}, {3, 1, EdgeKind::Back, 0, 2},
        {2, 1, EdgeKind::Back, 0, 1}, {2, 4, EdgeKind::Back, 1, 1},
        {2, 0, EdgeKind::Back, 2, 1},
    };
    for (const Want& w : table) {
        EdgeId e = edge_between(g, w.u, w.v);
        CHECK(oriented_pair(g, dfs, e) == VPair{w.u, w.v});
        CHECK(dfs.edge[e].kind == w.kind);
        CHECK(dfs.edge[e].lowpt == w.lowpt);
        CHECK(dfs.edge[e].angle == w.angle);
        if (w.kind == EdgeKind::Back) CHECK_FALSE(dfs.edge[e].left_back);
    }
    check_dfs1_by_fundamental_cycles(g, dfs);
}

TEST_CASE("dfs1 fundamental-cycle oracle over corpus") {
    for (const RotationGraph& g : testsupport::small_corpus())
        check_dfs1_by_fundamental_cycles(g, dfs1(g));
}

TEST_CASE("dfs1 rejects disconnected input") {
    RotationGraph g = parse_rotation_graph(
        "6 6\nouter 1 0\n0: 1 2\n1: 2 0\n2: 0 1\n3: 4 5\n4: 5 3\n5: 3 4\n");
    CHECK_THROWS_AS(dfs1(g), std::invalid_argument);
}

TEST_CASE("sort_edges matches a comparison sort") {
    for (const RotationGraph& g : testsupport::small_corpus()) {
        DfsResult dfs = dfs1(g);
        EdgeOrder order = sort_edges(g, dfs);
        std::vector<std::vector<EdgeId>> want = reference_edge_order(g, dfs);
        for (VertexId v = 0; v < g.num_vertices(); ++v) {
            std::vector<EdgeId> got(order.edges.begin() + order.offsets[v],
                                    order.edges.begin() + order.offsets[v + 1]);
            CHECK(got == want[v]);
        }
    }
}

TEST_CASE("edge order keys are lexicographically non-decreasing") {
    for (const RotationGraph& g : testsupport::small_corpus()) {
        DfsResult dfs = dfs1(g);
        EdgeOrder order = sort_edges(g, dfs);
        for (VertexId v = 0; v < g.num_vertices(); ++v)
            for (std::uint32_t i = order.offsets[v] + 1; i < order.offsets[v + 1]; ++i) {
                EdgeId a = order.edges[i - 1], b = order.edges[i];
                bool le = dfs.edge[a].lowpt > dfs.edge[b].lowpt ||
                          (dfs.edge[a].lowpt == dfs.edge[b].lowpt &&
                           dfs.edge[a].angle <= dfs.edge[b].angle);
                CHECK(le);
            }
    }
}

TEST_CASE("canon5 edge order") {
    RotationGraph g = testsupport::canon5();
    DfsResult dfs = dfs1(g);
    EdgeOrder order = sort_edges(g, dfs);
    auto list_at = [&](std::uint32_t origin) {
        std::vector<VPair> out;
        for (std::uint32_t i = order.offsets[origin]; i < order.offsets[origin + 1]; ++i)
            out.push_back(oriented_pair(g, dfs, order.edges[i]));
        return out;
    };
    CHECK(list_at(1) == std::vector<VPair>{{1, 4}});
    CHECK(list_at(4) == std::vector<VPair>{{4, 0}});
    CHECK(list_at(0) == std::vector<VPair>{{0, 3}, {0, 1}});
    CHECK(list_at(3) == std::vector<VPair>{{3, 2}, {3, 1}});
    CHECK(list_at(2) == std::vector<VPair>{{2, 0}, {2, 4}, {2, 1}});
}

TEST_CASE("dfs2 timestamps and stability") {
    for (const RotationGraph& g : testsupport::small_corpus()) {
        DfsResult dfs = dfs1(g);
        EdgeOrder order = sort_edges(g, dfs);
        dfs2(g, dfs, order);

        std::vector<char> seen(g.num_edges(), 0);
        for (EdgeId e = 0; e < g.num_edges(); ++e) {
            REQUIRE(dfs.edge[e].edge_time < g.num_edges());
            CHECK_FALSE(seen[dfs.edge[e].edge_time]);
            seen[dfs.edge[e].edge_time] = 1;
            // the classification dfs2 re-derives from depths must equal dfs1's
            HalfEdgeId h = dfs.edge[e].oriented;
            EdgeKind second_pass_kind =
                dfs.vertex[g.head(h)].depth == dfs.vertex[g.tail(h)].depth + 1
                    ? EdgeKind::Tree
                    : EdgeKind::Back;
            CHECK(second_pass_kind == dfs.edge[e].kind);
        }

        // reference recursive DFS2 over comparison-sorted lists
        std::vector<std::uint32_t> want_time(g.num_edges(), kNone);
        std::uint32_t now = 0;
        reference_dfs2(g, dfs, reference_edge_order(g, dfs), g.root(), now, want_time);
        for (EdgeId e = 0; e < g.num_edges(); ++e) CHECK(dfs.edge[e].edge_time == want_time[e]);
    }
}

TEST_CASE("canon5 timestamps") {
    RotationGraph g = testsupport::canon5();
    DfsResult dfs = dfs1(g);
    EdgeOrder order = sort_edges(g, dfs);
    dfs2(g, dfs, order);
    const std::pair<VPair, std::uint32_t> want[] = {
        {{1, 4}, 0}, {{4, 0}, 1}, {{0, 3}, 2}, {{3, 2}, 3}, {{2, 0}, 4},
        {{2, 4}, 5}, {{2, 1}, 6}, {{3, 1}, 7}, {{0, 1}, 8},
    };
    for (const auto& [pair, t] : want)
        CHECK(dfs.edge[edge_between(g, pair.first, pair.second)].edge_time == t);
}

TEST_CASE("sort_triangles on canon5") {
    RotationGraph g = testsupport::canon5();
    OrderedTriangleList ordered = order_separating_triangles(g, separating_triangles(g));
    REQUIRE(ordered.triangles.size() == 1);
    const TriangleRecord& t = ordered.triangles[0];
    CHECK(oracle::sorted_triple(t.corners[0], t.corners[1], t.corners[2]) ==
          oracle::Triple{0, 1, 2});
    CHECK(g.origin(g.tail(t.reference_edge)) == 0);
    CHECK(g.origin(g.head(t.reference_edge)) == 1);
    CHECK(t.internal_angle == 2);
    CHECK(t.time == 8);
    // interior (the side containing d=3) lies to the left of the reference edge
    FacePartition fp = enumerate_faces(g);
    oracle::FaceSet left = oracle::faces_left_of(g, t.reference_edge, {0, 1, 2}, fp);
    oracle::FaceSet interior = oracle::interior_faces(g, {0, 1, 2}, fp);
    CHECK(left.bits == interior.bits);
}

TEST_CASE("canon7 order is innermost first") {
    RotationGraph g = testsupport::canon7();
    OrderedTriangleList ordered = order_separating_triangles(g, separating_triangles(g));
    REQUIRE(ordered.triangles.size() == 2);
    CHECK(oracle::sorted_triple(ordered.triangles[0].corners[0], ordered.triangles[0].corners[1],
                                ordered.triangles[0].corners[2]) == oracle::Triple{0, 1, 4});
    CHECK(oracle::sorted_triple(ordered.triangles[1].corners[0], ordered.triangles[1].corners[1],
                                ordered.triangles[1].corners[2]) == oracle::Triple{0, 1, 3});
}

TEST_CASE("empty triangle list stays empty") {
    RotationGraph g = testsupport::k4();
    OrderedTriangleList ordered = order_separating_triangles(g, separating_triangles(g));
    CHECK(ordered.triangles.empty());
}

TEST_CASE("ordering respects containment over corpus") {
    for (const RotationGraph& g : testsupport::small_corpus()) {
        OrderedTriangleList ordered = order_separating_triangles(g, separating_triangles(g));
        oracle::ContainmentRelation rel = oracle::containment_relation(g);
        REQUIRE(rel.triangles.size() == ordered.triangles.size());

        std::map<oracle::Triple, std::size_t> position;
        for (std::size_t i = 0; i < ordered.triangles.size(); ++i)
            position[oracle::sorted_triple(ordered.triangles[i].corners[0],
                                           ordered.triangles[i].corners[1],
                                           ordered.triangles[i].corners[2])] = i;
        for (std::size_t i = 0; i < rel.triangles.size(); ++i)
            for (std::size_t j = 0; j < rel.triangles.size(); ++j)
                if (rel.contains[i][j]) // interior(j) inside interior(i)
                    CHECK(position.at(rel.triangles[j]) < position.at(rel.triangles[i]));
    }
}

TEST_CASE("reference edges have the interior to their left over corpus") {
    for (const RotationGraph& g : testsupport::small_corpus()) {
        OrderedTriangleList ordered = order_separating_triangles(g, separating_triangles(g));
        FacePartition fp = enumerate_faces(g);
        for (const TriangleRecord& t : ordered.triangles) {
            oracle::Triple tri =
                oracle::sorted_triple(t.corners[0], t.corners[1], t.corners[2]);
            oracle::FaceSet left = oracle::faces_left_of(g, t.reference_edge, tri, fp);
            oracle::FaceSet interior = oracle::interior_faces(g, tri, fp);
            CHECK(left.bits == interior.bits);
        }
    }
}

TEST_CASE("interior edges are traversed before the triangle is discovered") {
    for (const RotationGraph& g : testsupport::small_corpus()) {
        std::vector<TriangleRecord> seps = separating_triangles(g);
        DfsResult dfs = dfs1(g);
        EdgeOrder order = sort_edges(g, dfs);
        dfs2(g, dfs, order);
        std::vector<TriangleRecord> sorted = sort_triangles(g, dfs, seps);
        FacePartition fp = enumerate_faces(g);
        for (const TriangleRecord& t : sorted) {
            oracle::Triple tri =
                oracle::sorted_triple(t.corners[0], t.corners[1], t.corners[2]);
            oracle::FaceSet interior = oracle::interior_faces(g, tri, fp);
            std::set<EdgeId> own(t.edges.begin(), t.edges.end());
            for (std::size_t f = 0; f < fp.count(); ++f) {
                if (!interior.contains(static_cast<std::uint32_t>(f))) continue;
                HalfEdgeId h = fp.rep[f];
                HalfEdgeId cur = h;
                do {
                    EdgeId e = RotationGraph::edge_of(cur);
                    if (!own.count(e)) CHECK(dfs.edge[e].edge_time < t.time);
                    cur = g.face_next(cur);
                } while (cur != h);
            }
        }
    }
}

TEST_CASE("triangles sharing the last edge are consecutive by ascending angle") {
    for (const RotationGraph& g : testsupport::small_corpus()) {
        OrderedTriangleList ordered = order_separating_triangles(g, separating_triangles(g));
        std::map<std::uint32_t, std::vector<std::size_t>> by_time;
        for (std::size_t i = 0; i < ordered.triangles.size(); ++i)
            by_time[ordered.triangles[i].time].push_back(i);
        for (const auto& [time, idxs] : by_time) {
            for (std::size_t k = 1; k < idxs.size(); ++k) {
                CHECK(idxs[k] == idxs[k - 1] + 1);
                CHECK(ordered.triangles[idxs[k]].last_edge ==
                      ordered.triangles[idxs[k - 1]].last_edge);
                CHECK(ordered.triangles[idxs[k - 1]].internal_angle <=
                      ordered.triangles[idxs[k]].internal_angle);
            }
        }
    }
}

TEST_CASE("ordering work is linear") {
    for (const RotationGraph& g : testsupport::small_corpus()) {
        OrderedTriangleList ordered = order_separating_triangles(g, separating_triangles(g));
        CHECK(ordered.stats.total() <= 50 * (g.num_vertices() + g.num_edges()) + 100);
    }
}
