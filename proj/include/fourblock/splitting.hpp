#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "fourblock/ordering.hpp"
#include "fourblock/rotation_graph.hpp"
#include "fourblock/triangles.hpp"

namespace fourblock {

/// One 4-connected component, materialized as a view over the shared
/// half-edge arena: the vertex set plus a half-edge whose left face is the
/// component's designated outer face (the copy triangle for non-root
/// nodes, the original outer face for the root).
struct ComponentNode {
    std::vector<VertexId> vertices;
    HalfEdgeId outer_half = kNone;
    std::uint32_t parent = kNone;            // component index; kNone for the root
    HalfEdgeId parent_face_half = kNone;     // half in the parent bordering the linking face
    std::array<std::uint32_t, 3> parent_face_origins{kNone, kNone, kNone};
};

struct FourBlockTree {
    RotationGraph graph; // the arena after all splits; components are views into it
    std::vector<ComponentNode> nodes;
    std::uint32_t root = kNone;
    std::uint64_t transfer_count = 0;
};

struct SplitResult {
    std::array<VertexId, 3> copies{kNone, kNone, kNone}; // v1', v2', v3'
    HalfEdgeId child_outer = kNone;                      // (v2' -> v1'), outer face left
    std::array<HalfEdgeId, 3> interior_sides{kNone, kNone, kNone}; // remainder halves with
                                                                   // the new face t to their left
    std::size_t moved = 0;
};

/// Splits g along one separating triangle. The reference edge (v1,v2) must
/// be live with the triangle's interior to its left (guaranteed by the
/// innermost-first order). Creates copies v1',v2',v3' joined by a copy
/// triangle and transfers each corner's interior arc to its copy, walking
/// the reference edges (v1,v2), (v3,v1), (v2,v3) around the triangle.
/// Time is proportional to the number of transferred half-edges.
inline SplitResult split_triangle(RotationGraph& g, const TriangleRecord& t) {
    SplitResult res;
    HalfEdgeId ref = t.reference_edge;
    if (ref == kNone || ref >= g.num_half_edges())
        throw std::invalid_argument("split_triangle: no live reference edge");
    VertexId v1 = g.tail(ref), v2 = g.head(ref);
    VertexId v3 = t.corners[0] ^ t.corners[1] ^ t.corners[2] ^ v1 ^ v2;

    auto walk_to = [&](HalfEdgeId from, VertexId target_head) -> HalfEdgeId {
        HalfEdgeId h = g.ccw_next(from);
        std::uint32_t guard = g.degree(g.tail(from));
        while (g.head(h) != target_head) {
            if (guard-- == 0)
                throw std::logic_error("split_triangle: interior walk missed the triangle edge "
                                       "(ordering bug)");
            h = g.ccw_next(h);
        }
        return h;
    };
    HalfEdgeId h13 = walk_to(ref, v3);                       // (v1 -> v3)
    HalfEdgeId h32 = walk_to(RotationGraph::twin(h13), v2);  // (v3 -> v2)
    HalfEdgeId h21 = walk_to(RotationGraph::twin(h32), v1);  // (v2 -> v1)
    if (h21 != RotationGraph::twin(ref))
        throw std::logic_error("split_triangle: walk did not close at the reference edge");

    VertexId c1 = g.add_vertex(g.origin(v1));
    VertexId c2 = g.add_vertex(g.origin(v2));
    VertexId c3 = g.add_vertex(g.origin(v3));
    res.copies = {c1, c2, c3};
    HalfEdgeId e12 = g.new_edge(c1, c2); // halves (c1->c2), (c2->c1)
    HalfEdgeId e23 = g.new_edge(c2, c3);
    HalfEdgeId e31 = g.new_edge(c3, c1);

    // copy list at ci: [edge to next copy, transferred arc (original CCW
    // order), edge to previous copy]; the copy triangle then bounds the
    // component's outer face
    g.attach_back(e12);                                        // (c1->c2)
    res.moved += g.transfer_arc(ref, h13, c1);
    g.attach_back(RotationGraph::twin(e31));                   // (c1->c3)

    g.attach_back(e23);                                        // (c2->c3)
    res.moved += g.transfer_arc(RotationGraph::twin(h32), h21, c2);
    g.attach_back(RotationGraph::twin(e12));                   // (c2->c1)

    g.attach_back(e31);                                        // (c3->c1)
    res.moved += g.transfer_arc(RotationGraph::twin(h13), h32, c3);
    g.attach_back(RotationGraph::twin(e23));                   // (c3->c2)

    res.child_outer = RotationGraph::twin(e12); // (c2->c1); outer face of the child is left of it
    res.interior_sides = {ref, RotationGraph::twin(h32), RotationGraph::twin(h13)};
    return res;
}

/// Splits along the separating triangles in the given innermost-first
/// order and assembles the 4-block tree. Parent links are resolved through
/// preliminary child pointers: each split registers its component on the
/// three remainder half-edges bordering the new face, and every half-edge
/// scanned while materializing a later component (or the root) resolves
/// the pointers it carries.
inline FourBlockTree decompose(RotationGraph g, const OrderedTriangleList& ordered) {
    FourBlockTree tree;
    tree.nodes.reserve(ordered.triangles.size() + 1);
    const std::size_t n_final = g.num_vertices() + 3 * ordered.triangles.size();
    const std::size_t h_final = g.num_half_edges() + 6 * ordered.triangles.size();
    g.reserve(n_final, h_final);
    std::vector<std::uint32_t> pending(h_final, kNone); // half-edge -> component awaiting a parent
    std::vector<char> visited(n_final, 0);

    auto materialize = [&](VertexId seed, HalfEdgeId outer) -> std::uint32_t {
        std::uint32_t id = static_cast<std::uint32_t>(tree.nodes.size());
        tree.nodes.push_back(ComponentNode{});
        ComponentNode& node = tree.nodes.back();
        node.outer_half = outer;
        std::vector<VertexId>& comp = node.vertices;
        comp.push_back(seed);
        visited[seed] = 1;
        for (std::size_t i = 0; i < comp.size(); ++i) {
            VertexId v = comp[i];
            HalfEdgeId h0 = g.first_half(v);
            if (h0 == kNone) continue;
            HalfEdgeId h = h0;
            do {
                if (std::uint32_t child = pending[h]; child != kNone) {
                    tree.nodes[child].parent = id;
                    tree.nodes[child].parent_face_half = h;
                    HalfEdgeId a = h;
                    for (int k = 0; k < 3; ++k) {
                        tree.nodes[child].parent_face_origins[k] = g.origin(g.tail(a));
                        a = g.face_next(a);
                    }
                    pending[h] = kNone;
                }
                VertexId w = g.head(h);
                if (!visited[w]) {
                    visited[w] = 1;
                    comp.push_back(w);
                }
                h = g.ccw_next(h);
            } while (h != h0);
        }
        return id;
    };

    for (const TriangleRecord& t : ordered.triangles) {
        SplitResult sr = split_triangle(g, t);
        std::uint32_t id = materialize(sr.copies[0], sr.child_outer);
        // register the preliminary child pointer on the three half-edges
        // bordering the new face; a slot already taken belongs to a triangle
        // sharing this edge, whose face now lies in the component just built
        for (HalfEdgeId h : sr.interior_sides) {
            if (std::uint32_t prev = pending[h]; prev != kNone) tree.nodes[prev].parent = id;
            pending[h] = id;
        }
    }

    tree.root = materialize(g.root(), g.outer_half_edge());

    for (std::uint32_t i = 0; i < tree.nodes.size(); ++i) {
        if (i != tree.root && tree.nodes[i].parent == kNone)
            throw std::logic_error("decompose: dangling preliminary child pointer");
    }
    tree.transfer_count = g.transfer_count();
    tree.graph = std::move(g);
    return tree;
}

/// Deep-copies one component into a standalone RotationGraph with compact
/// vertex ids; origins carry over, the designated outer face becomes the
/// graph's outer half-edge.
inline RotationGraph component_graph(const FourBlockTree& tree, std::uint32_t node_id) {
    const RotationGraph& g = tree.graph;
    const ComponentNode& node = tree.nodes[node_id];
    RotationGraph out;
    std::unordered_map<VertexId, std::uint32_t> local;
    local.reserve(node.vertices.size() * 2);
    for (VertexId v : node.vertices) local.emplace(v, out.add_vertex(g.origin(v)));

    std::unordered_map<HalfEdgeId, HalfEdgeId> half_map;
    half_map.reserve(node.vertices.size() * 6);
    for (VertexId v : node.vertices) {
        HalfEdgeId h0 = g.first_half(v);
        HalfEdgeId h = h0;
        do {
            auto it = half_map.find(h);
            HalfEdgeId nh;
            if (it == half_map.end()) {
                nh = out.new_edge(local.at(g.tail(h)), local.at(g.head(h)));
                half_map.emplace(h, nh);
                half_map.emplace(RotationGraph::twin(h), RotationGraph::twin(nh));
            } else {
                nh = it->second;
            }
            out.attach_back(nh);
            h = g.ccw_next(h);
        } while (h != h0);
    }
    out.set_outer_half_edge(half_map.at(node.outer_half));
    return out;
}

} // namespace fourblock
