#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fourblock/rotation_graph.hpp"
#include "fourblock/splitting.hpp"

// Brute-force reference implementations. These favor clarity over speed
// (cubic triple scans, quadratic rebuilds) and stay independent of the
// optimized pipeline; they are the correctness authority at test scale.

namespace fourblock::oracle {

using Triple = std::array<std::uint32_t, 3>; // origin ids, ascending

inline Triple sorted_triple(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    Triple t{a, b, c};
    std::sort(t.begin(), t.end());
    return t;
}

/// Face bitset keyed by the face ids of one enumerate_faces run.
struct FaceSet {
    std::vector<std::uint64_t> bits;
    std::size_t size = 0;

    explicit FaceSet(std::size_t face_count = 0) : bits((face_count + 63) / 64, 0) {}
    void insert(std::uint32_t f) {
        if (!(bits[f >> 6] & (1ull << (f & 63)))) {
            bits[f >> 6] |= 1ull << (f & 63);
            ++size;
        }
    }
    bool contains(std::uint32_t f) const { return bits[f >> 6] & (1ull << (f & 63)); }
    bool subset_of(const FaceSet& o) const {
        for (std::size_t i = 0; i < bits.size(); ++i)
            if (bits[i] & ~o.bits[i]) return false;
        return true;
    }
    bool proper_subset_of(const FaceSet& o) const { return size < o.size && subset_of(o); }
};

/// All non-facial 3-cliques, by exhaustive triple scan and a facial test
/// based on the face-walk partition (independent of the incidence-list
/// adjacency trick used by the pipeline). Triples are internal vertex ids.
inline std::vector<Triple> brute_separating_triangles(const RotationGraph& g) {
    const std::size_t n = g.num_vertices();
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (HalfEdgeId h = 0; h < g.num_half_edges(); ++h) adj[g.tail(h)][g.head(h)] = 1;

    std::set<Triple> facial;
    FacePartition fp = enumerate_faces(g);
    for (std::size_t f = 0; f < fp.count(); ++f) {
        if (fp.length[f] != 3) continue;
        HalfEdgeId h = fp.rep[f];
        facial.insert(sorted_triple(g.tail(h), g.tail(g.face_next(h)),
                                    g.tail(g.face_next(g.face_next(h)))));
    }

    std::vector<Triple> out;
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = a + 1; b < n; ++b) {
            if (!adj[a][b]) continue;
            for (std::uint32_t c = b + 1; c < n; ++c) {
                if (adj[a][c] && adj[b][c] && !facial.count(Triple{a, b, c}))
                    out.push_back(Triple{a, b, c});
            }
        }
    return out;
}

/// Whether deleting the three vertices disconnects the rest (the
/// connectivity characterization of separating triangles; cross-checks
/// the facial test).
inline bool disconnects(const RotationGraph& g, const Triple& t) {
    const std::size_t n = g.num_vertices();
    std::vector<char> removed(n, 0), visited(n, 0);
    for (std::uint32_t v : t) removed[v] = 1;
    VertexId start = kNone;
    for (VertexId v = 0; v < n; ++v)
        if (!removed[v]) {
            start = v;
            break;
        }
    if (start == kNone) return false;
    std::vector<VertexId> queue = {start};
    visited[start] = 1;
    std::size_t reached = 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        HalfEdgeId h0 = g.first_half(queue[i]);
        HalfEdgeId h = h0;
        do {
            VertexId w = g.head(h);
            if (!removed[w] && !visited[w]) {
                visited[w] = 1;
                ++reached;
                queue.push_back(w);
            }
            h = g.ccw_next(h);
        } while (h != h0);
    }
    return reached != n - 3;
}

/// The set of faces in the interior of triangle t: flood over the
/// face-adjacency dual without crossing t's three edges, taking the side
/// that does not contain the outer face.
inline FaceSet interior_faces(const RotationGraph& g, const Triple& t,
                              const FacePartition& fp) {
    std::vector<char> blocked(g.num_edges(), 0);
    std::array<std::array<VertexId, 2>, 3> pairs{{{t[0], t[1]}, {t[1], t[2]}, {t[0], t[2]}}};
    for (auto [u, v] : pairs) {
        HalfEdgeId h = g.half_between(u, v);
        if (h == kNone) throw std::invalid_argument("interior_faces: not a triangle of g");
        blocked[RotationGraph::edge_of(h)] = 1;
    }
    std::uint32_t outer_face = fp.face_of[g.outer_half_edge()];

    auto flood = [&](std::uint32_t seed) {
        FaceSet side(fp.count());
        std::vector<std::uint32_t> queue = {seed};
        side.insert(seed);
        for (std::size_t i = 0; i < queue.size(); ++i) {
            HalfEdgeId h = fp.rep[queue[i]];
            HalfEdgeId cur = h;
            do {
                if (!blocked[RotationGraph::edge_of(cur)]) {
                    std::uint32_t nf = fp.face_of[RotationGraph::twin(cur)];
                    if (!side.contains(nf)) {
                        side.insert(nf);
                        queue.push_back(nf);
                    }
                }
                cur = g.face_next(cur);
            } while (cur != h);
        }
        return side;
    };

    HalfEdgeId h01 = g.half_between(t[0], t[1]);
    FaceSet side = flood(fp.face_of[h01]);
    if (side.contains(outer_face)) side = flood(fp.face_of[RotationGraph::twin(h01)]);
    if (side.contains(outer_face))
        throw std::logic_error("interior_faces: both sides touch the outer face");
    return side;
}

/// Faces to the left of a directed half-edge, flooding without crossing
/// the triangle's edges. Equals interior_faces(t) exactly when the
/// reference edge is correct.
inline FaceSet faces_left_of(const RotationGraph& g, HalfEdgeId ref, const Triple& t,
                             const FacePartition& fp) {
    std::vector<char> blocked(g.num_edges(), 0);
    std::array<std::array<VertexId, 2>, 3> pairs{{{t[0], t[1]}, {t[1], t[2]}, {t[0], t[2]}}};
    for (auto [u, v] : pairs)
        blocked[RotationGraph::edge_of(g.half_between(u, v))] = 1;
    FaceSet side(fp.count());
    std::vector<std::uint32_t> queue = {fp.face_of[ref]};
    side.insert(fp.face_of[ref]);
    for (std::size_t i = 0; i < queue.size(); ++i) {
        HalfEdgeId h = fp.rep[queue[i]];
        HalfEdgeId cur = h;
        do {
            if (!blocked[RotationGraph::edge_of(cur)]) {
                std::uint32_t nf = fp.face_of[RotationGraph::twin(cur)];
                if (!side.contains(nf)) {
                    side.insert(nf);
                    queue.push_back(nf);
                }
            }
            cur = g.face_next(cur);
        } while (cur != h);
    }
    return side;
}

/// Interior containment as a strict partial order over the separating
/// triangles; interiors in a triangulation are nested or disjoint.
struct ContainmentRelation {
    std::vector<Triple> triangles;        // internal-id triples
    std::vector<FaceSet> interiors;
    // contains[i][j] == true iff interior(j) is a proper subset of interior(i)
    std::vector<std::vector<char>> contains;
};

inline ContainmentRelation containment_relation(const RotationGraph& g) {
    ContainmentRelation rel;
    FacePartition fp = enumerate_faces(g);
    rel.triangles = brute_separating_triangles(g);
    for (const Triple& t : rel.triangles) rel.interiors.push_back(interior_faces(g, t, fp));
    rel.contains.assign(rel.triangles.size(), std::vector<char>(rel.triangles.size(), 0));
    for (std::size_t i = 0; i < rel.triangles.size(); ++i)
        for (std::size_t j = 0; j < rel.triangles.size(); ++j)
            if (i != j && rel.interiors[j].proper_subset_of(rel.interiors[i]))
                rel.contains[i][j] = 1;
    return rel;
}

/// Language-neutral tree form used to compare the pipeline against the
/// brute-force construction. Everything is in origin ids, sorted.
struct PlainNode {
    std::vector<std::uint32_t> origins;
    Triple outer_face{kNone, kNone, kNone};
    std::uint32_t parent = kNone;
    Triple parent_face{kNone, kNone, kNone};
};

struct PlainTree {
    std::vector<PlainNode> nodes;
    std::uint32_t root = kNone;
};

inline PlainTree to_plain(const FourBlockTree& tree) {
    PlainTree out;
    out.nodes.resize(tree.nodes.size());
    out.root = tree.root;
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const ComponentNode& node = tree.nodes[i];
        PlainNode& pn = out.nodes[i];
        for (VertexId v : node.vertices) pn.origins.push_back(tree.graph.origin(v));
        std::sort(pn.origins.begin(), pn.origins.end());
        HalfEdgeId h = node.outer_half;
        pn.outer_face = sorted_triple(tree.graph.origin(tree.graph.tail(h)),
                                      tree.graph.origin(tree.graph.tail(tree.graph.face_next(h))),
                                      tree.graph.origin(tree.graph.tail(
                                          tree.graph.face_next(tree.graph.face_next(h)))));
        pn.parent = node.parent;
        if (node.parent != kNone)
            pn.parent_face = sorted_triple(node.parent_face_origins[0],
                                           node.parent_face_origins[1],
                                           node.parent_face_origins[2]);
    }
    return out;
}

/// Builds the 4-block tree from scratch: containment order from face
/// floods, one node per separating triangle plus the root, vertex sets
/// from the face partition. Quadratic; test scale only.
inline PlainTree brute_4block_tree(const RotationGraph& g) {
    FacePartition fp = enumerate_faces(g);
    ContainmentRelation rel = containment_relation(g);
    const std::size_t k = rel.triangles.size();

    PlainTree out;
    out.nodes.resize(k + 1);
    out.root = static_cast<std::uint32_t>(k);

    // parent of triangle i: the smallest-interior triangle properly
    // containing it, or the root
    std::vector<std::uint32_t> parent(k, out.root);
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t best = kNone;
        for (std::size_t j = 0; j < k; ++j)
            if (rel.contains[j][i] && (best == kNone || rel.interiors[j].size < rel.interiors[best].size))
                best = j;
        if (best != kNone) parent[i] = static_cast<std::uint32_t>(best);
    }

    // faces owned by each node: interior minus the children's interiors
    std::vector<std::vector<char>> owned(k + 1, std::vector<char>(fp.count(), 0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::uint32_t f = 0; f < fp.count(); ++f)
            if (rel.interiors[i].contains(f)) owned[i][f] = 1;
    for (std::uint32_t f = 0; f < fp.count(); ++f) {
        bool top = true;
        for (std::size_t i = 0; i < k; ++i)
            if (rel.interiors[i].contains(f)) top = false;
        owned[k][f] = top;
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::uint32_t f = 0; f < fp.count(); ++f)
            if (owned[parent[i] == out.root ? k : parent[i]][f] && rel.interiors[i].contains(f))
                owned[parent[i] == out.root ? k : parent[i]][f] = 0;

    // a component's vertices are the corners of its owned faces plus the
    // corners of its boundary triangle and of its children's triangles
    // (those bound the copy faces; owned faces alone can miss corners
    // whose inner sectors are tiled by children)
    std::vector<std::set<std::uint32_t>> origins(k + 1);
    for (std::size_t node = 0; node <= k; ++node) {
        for (std::uint32_t f = 0; f < fp.count(); ++f) {
            if (!owned[node][f]) continue;
            HalfEdgeId h = fp.rep[f];
            HalfEdgeId cur = h;
            do {
                origins[node].insert(g.origin(g.tail(cur)));
                cur = g.face_next(cur);
            } while (cur != h);
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (VertexId v : rel.triangles[i]) {
            origins[i].insert(g.origin(v));
            origins[parent[i]].insert(g.origin(v));
        }
    }
    for (std::size_t node = 0; node <= k; ++node)
        out.nodes[node].origins.assign(origins[node].begin(), origins[node].end());
    for (std::size_t i = 0; i < k; ++i) {
        const Triple& t = rel.triangles[i];
        Triple ext = sorted_triple(g.origin(t[0]), g.origin(t[1]), g.origin(t[2]));
        out.nodes[i].outer_face = ext;
        out.nodes[i].parent = parent[i];
        out.nodes[i].parent_face = ext; // the linking face is the copy of the triangle itself
    }
    {
        HalfEdgeId h = g.outer_half_edge();
        out.nodes[k].outer_face =
            sorted_triple(g.origin(g.tail(h)), g.origin(g.tail(g.face_next(h))),
                          g.origin(g.tail(g.face_next(g.face_next(h)))));
    }
    return out;
}

namespace detail {

inline std::string signature(const PlainTree& t, std::uint32_t node,
                             const std::vector<std::vector<std::uint32_t>>& children) {
    std::string sig = "(v:";
    for (std::uint32_t o : t.nodes[node].origins) sig += std::to_string(o) + ",";
    sig += "|o:";
    for (std::uint32_t o : t.nodes[node].outer_face) sig += std::to_string(o) + ",";
    sig += "|c:";
    std::vector<std::string> subs;
    for (std::uint32_t c : children[node]) {
        std::string s = "[f:";
        for (std::uint32_t o : t.nodes[c].parent_face) s += std::to_string(o) + ",";
        s += signature(t, c, children) + "]";
        subs.push_back(std::move(s));
    }
    std::sort(subs.begin(), subs.end());
    for (const std::string& s : subs) sig += s;
    sig += ")";
    return sig;
}

} // namespace detail

/// Root-preserving isomorphism on origin multisets, outer-face triples and
/// parent-face triples.
inline bool trees_isomorphic(const PlainTree& a, const PlainTree& b) {
    if (a.nodes.size() != b.nodes.size()) return false;
    auto children_of = [](const PlainTree& t) {
        std::vector<std::vector<std::uint32_t>> ch(t.nodes.size());
        for (std::uint32_t i = 0; i < t.nodes.size(); ++i)
            if (i != t.root && t.nodes[i].parent != kNone) ch[t.nodes[i].parent].push_back(i);
        return ch;
    };
    auto ca = children_of(a);
    auto cb = children_of(b);
    return detail::signature(a, a.root, ca) == detail::signature(b, b.root, cb);
}

} // namespace fourblock::oracle
