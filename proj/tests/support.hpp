#pragma once

#include <string>
#include <vector>

#include "fourblock/generators.hpp"
#include "fourblock/io.hpp"
#include "fourblock/rotation_graph.hpp"

namespace testsupport {

inline fourblock::RotationGraph canon5() {
    return fourblock::parse_rotation_graph(fourblock::kCanon5Doc);
}
inline fourblock::RotationGraph canon7() {
    return fourblock::parse_rotation_graph(fourblock::kCanon7Doc);
}
inline fourblock::RotationGraph k4() { return fourblock::parse_rotation_graph(fourblock::kK4Doc); }
inline fourblock::RotationGraph triangle() {
    return fourblock::parse_rotation_graph(fourblock::kTriangleDoc);
}

/// Small mixed corpus for property tests: fixtures plus random stacked
/// triangulations and short nested chains.
inline std::vector<fourblock::RotationGraph> small_corpus() {
    std::vector<fourblock::RotationGraph> out;
    out.push_back(triangle());
    out.push_back(k4());
    out.push_back(canon5());
    out.push_back(canon7());
    for (std::uint32_t n : {5u, 8u, 13u, 21u, 40u, 77u})
        for (std::uint64_t seed : {1ull, 2ull, 7ull})
            out.push_back(fourblock::gen_apollonian(n, seed));
    for (std::uint32_t k : {1u, 2u, 5u, 12u}) out.push_back(fourblock::gen_nested_chain(k));
    return out;
}

} // namespace testsupport
