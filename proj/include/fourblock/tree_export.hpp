#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "fourblock/splitting.hpp"

namespace fourblock {

namespace detail {

/// Output ids: root first, then children in split order.
inline std::vector<std::uint32_t> export_order(const FourBlockTree& tree) {
    std::vector<std::uint32_t> order;
    order.push_back(tree.root);
    for (std::uint32_t i = 0; i < tree.nodes.size(); ++i)
        if (i != tree.root) order.push_back(i);
    return order;
}

} // namespace detail

inline nlohmann::json to_json(const FourBlockTree& tree) {
    const RotationGraph& g = tree.graph;
    std::vector<std::uint32_t> order = detail::export_order(tree);
    std::vector<std::uint32_t> out_id(tree.nodes.size(), kNone);
    for (std::uint32_t i = 0; i < order.size(); ++i) out_id[order[i]] = i;

    nlohmann::json components = nlohmann::json::array();
    for (std::uint32_t node_id : order) {
        const ComponentNode& node = tree.nodes[node_id];
        nlohmann::json comp;
        comp["id"] = out_id[node_id];

        std::unordered_map<VertexId, std::uint32_t> local;
        local.reserve(node.vertices.size() * 2);
        for (std::uint32_t i = 0; i < node.vertices.size(); ++i) local.emplace(node.vertices[i], i);

        nlohmann::json outer = nlohmann::json::array();
        {
            HalfEdgeId h = node.outer_half;
            for (int k = 0; k < 3; ++k) {
                outer.push_back(g.origin(g.tail(h)));
                h = g.face_next(h);
            }
        }
        comp["outer_face"] = outer;

        nlohmann::json verts = nlohmann::json::array();
        nlohmann::json rot = nlohmann::json::array();
        for (std::uint32_t i = 0; i < node.vertices.size(); ++i) {
            VertexId v = node.vertices[i];
            verts.push_back({{"local", i}, {"origin", g.origin(v)}});
            nlohmann::json nb = nlohmann::json::array();
            HalfEdgeId h0 = g.first_half(v);
            HalfEdgeId h = h0;
            do {
                nb.push_back(local.at(g.head(h)));
                h = g.ccw_next(h);
            } while (h != h0);
            rot.push_back(nb);
        }
        comp["vertices"] = verts;
        comp["rotation"] = rot;

        if (node_id == tree.root) {
            comp["parent"] = nullptr;
        } else {
            comp["parent"] = {{"parent", out_id[node.parent]},
                              {"face", {node.parent_face_origins[0], node.parent_face_origins[1],
                                        node.parent_face_origins[2]}}};
        }
        components.push_back(std::move(comp));
    }
    return nlohmann::json{{"components", components}};
}

inline std::string to_dot(const FourBlockTree& tree) {
    std::vector<std::uint32_t> order = detail::export_order(tree);
    std::vector<std::uint32_t> out_id(tree.nodes.size(), kNone);
    for (std::uint32_t i = 0; i < order.size(); ++i) out_id[order[i]] = i;

    std::string dot = "digraph fourblocktree {\n";
    for (std::uint32_t node_id : order) {
        dot += "  c" + std::to_string(out_id[node_id]) + " [label=\"n=" +
               std::to_string(tree.nodes[node_id].vertices.size()) + "\"];\n";
    }
    for (std::uint32_t node_id : order) {
        const ComponentNode& node = tree.nodes[node_id];
        if (node_id == tree.root) continue;
        dot += "  c" + std::to_string(out_id[node.parent]) + " -> c" +
               std::to_string(out_id[node_id]) + " [label=\"" +
               std::to_string(node.parent_face_origins[0]) + "," +
               std::to_string(node.parent_face_origins[1]) + "," +
               std::to_string(node.parent_face_origins[2]) + "\"];\n";
    }
    dot += "}\n";
    return dot;
}

} // namespace fourblock
