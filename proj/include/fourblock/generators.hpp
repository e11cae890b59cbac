#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "fourblock/io.hpp"
#include "fourblock/rotation_graph.hpp"

namespace fourblock {

/// SplitMix64; the stream an instance spec maps to is fixed so that other
/// implementations can reproduce the same instances from (kind, n, seed).
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
};

enum class GenKind : std::uint8_t { Canonical, Apollonian, NestedChain };

struct GenSpec {
    GenKind kind = GenKind::Canonical;
    std::string name;       // canonical fixture name
    std::uint32_t n = 0;    // vertex count (apollonian) or chain length k (nested-chain)
    std::uint64_t seed = 0;
};

namespace detail {

/// CCW triangle on vertices 0,1,2 with outer edge (1 -> 0); the inner face
/// is the walk <0->1, 1->2, 2->0>.
inline RotationGraph seed_triangle() {
    RotationGraph g;
    for (std::uint32_t v = 0; v < 3; ++v) g.add_vertex(v);
    HalfEdgeId e01 = g.new_edge(0, 1);
    HalfEdgeId e02 = g.new_edge(0, 2);
    HalfEdgeId e12 = g.new_edge(1, 2);
    g.attach_back(e01);
    g.attach_back(e02);
    g.attach_back(RotationGraph::twin(e12)); // at 1: 2 ...
    g.attach_back(RotationGraph::twin(e01)); // at 1: 2, 0
    g.attach_back(RotationGraph::twin(e02)); // at 2: 0 ...
    g.attach_back(e12);                      // at 2: 0, 1
    g.set_outer_half_edge(RotationGraph::twin(e01)); // (1 -> 0)
    return g;
}

/// Stacks a fresh vertex into the face left of h0 (walk <h0, h1, h2> with
/// corners a, b, c), connecting it to all three corners. The three
/// replacement faces keep h0, h1, h2 as walk representatives.
inline VertexId stack_into_face(RotationGraph& g, HalfEdgeId h0) {
    HalfEdgeId h1 = g.face_next(h0);
    HalfEdgeId h2 = g.face_next(h1);
    if (g.face_next(h2) != h0) throw std::invalid_argument("stack_into_face: face is not a triangle");
    VertexId a = g.tail(h0), b = g.tail(h1), c = g.tail(h2);
    VertexId x = g.add_vertex(static_cast<std::uint32_t>(g.num_vertices()));
    HalfEdgeId ax = g.new_edge(a, x);
    HalfEdgeId bx = g.new_edge(b, x);
    HalfEdgeId cx = g.new_edge(c, x);
    g.attach_after(ax, h0);
    g.attach_after(bx, h1);
    g.attach_after(cx, h2);
    g.attach_back(RotationGraph::twin(ax)); // rotation at x: a, b, c
    g.attach_back(RotationGraph::twin(bx));
    g.attach_back(RotationGraph::twin(cx));
    return x;
}

} // namespace detail

// Frozen fixture documents. CANON-5 is the bipyramid with separating
// triangle {0,1,2} and vertex 3 inside it; CANON-7 stacks 3 into (0,1,2),
// 4 into (0,1,3), 5 into (0,1,4), giving the separating chain
// {0,1,3} > {0,1,4}.
inline constexpr const char* kCanon5Doc =
    "5 9\nouter 1 0\n0: 1 3 2 4\n1: 4 2 3 0\n2: 4 0 3 1\n3: 2 0 1\n4: 0 2 1\n";
inline constexpr const char* kCanon7Doc =
    "6 12\nouter 1 0\n0: 1 5 4 3 2\n1: 2 3 4 5 0\n2: 0 3 1\n3: 0 4 1 2\n4: 0 5 1 3\n5: 0 1 4\n";
inline constexpr const char* kTriangleDoc = "3 3\nouter 1 0\n0: 1 2\n1: 2 0\n2: 0 1\n";
inline constexpr const char* kK4Doc = "4 6\nouter 1 0\n0: 1 3 2\n1: 2 3 0\n2: 0 3 1\n3: 0 1 2\n";

inline RotationGraph gen_canonical(const std::string& name) {
    if (name == "triangle") return parse_rotation_graph(kTriangleDoc);
    if (name == "k4") return parse_rotation_graph(kK4Doc);
    if (name == "canon5") return parse_rotation_graph(kCanon5Doc);
    if (name == "canon7") return parse_rotation_graph(kCanon7Doc);
    throw std::invalid_argument("unknown canonical instance '" + name + "'");
}

/// Random stacked triangulation: starting from the seed triangle, insert
/// each new vertex into a uniformly chosen inner face (SplitMix64 stream,
/// index = next() % face_count).
inline RotationGraph gen_apollonian(std::uint32_t n, std::uint64_t seed) {
    if (n < 4) throw std::invalid_argument("gen_apollonian: n must be at least 4");
    RotationGraph g = detail::seed_triangle();
    SplitMix64 rng(seed);
    std::vector<HalfEdgeId> inner_faces = {0}; // half (0 -> 1)
    while (g.num_vertices() < n) {
        std::size_t pick = static_cast<std::size_t>(rng.next() % inner_faces.size());
        HalfEdgeId h0 = inner_faces[pick];
        HalfEdgeId h1 = g.face_next(h0);
        HalfEdgeId h2 = g.face_next(h1);
        detail::stack_into_face(g, h0);
        inner_faces[pick] = h0; // now the (a, b, x) face
        inner_faces.push_back(h1);
        inner_faces.push_back(h2);
    }
    return g;
}

/// Adversarial chain: k nested separating triangles sharing the edge
/// {0,1}, built by stacking along the (0, 1, *) face lineage. n = k + 4.
inline RotationGraph gen_nested_chain(std::uint32_t k) {
    if (k < 1) throw std::invalid_argument("gen_nested_chain: k must be at least 1");
    RotationGraph g = detail::seed_triangle();
    HalfEdgeId lineage = 0; // half (0 -> 1); stays on the innermost (0,1,*) face
    for (std::uint32_t i = 0; i < k + 1; ++i) detail::stack_into_face(g, lineage);
    return g;
}

inline RotationGraph generate(const GenSpec& spec) {
    switch (spec.kind) {
        case GenKind::Canonical: return gen_canonical(spec.name);
        case GenKind::Apollonian: return gen_apollonian(spec.n, spec.seed);
        case GenKind::NestedChain: return gen_nested_chain(spec.n);
    }
    throw std::invalid_argument("generate: bad kind");
}

} // namespace fourblock
