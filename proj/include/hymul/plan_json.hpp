#pragma once

// Lossless JSON form of instruction trees:
//   {"std": "schoolbook"}
//   {"toom": k, "pts": [...], "children": [node x (2k-1)]}

#include <json.hpp>

#include "hymul/plan.hpp"

namespace hymul {

inline nlohmann::json plan_to_json(const InstructionTree& node) {
    nlohmann::json j;
    if (node.is_standard()) {
        j["std"] = node.variant;
        return j;
    }
    j["toom"] = node.k;
    j["pts"] = node.pts;
    nlohmann::json kids = nlohmann::json::array();
    for (const auto& ch : node.children) kids.push_back(plan_to_json(*ch));
    j["children"] = std::move(kids);
    return j;
}

inline std::unique_ptr<InstructionTree> plan_from_json(const nlohmann::json& j) {
    auto node = std::make_unique<InstructionTree>();
    if (j.contains("std")) {
        node->variant = j.at("std").get<std::string>();
        return node;
    }
    if (!j.contains("toom")) throw PlanError("plan node must contain 'std' or 'toom'");
    node->k = j.at("toom").get<int>();
    node->pts = j.at("pts").get<std::vector<std::int64_t>>();
    check_points(node->k, node->pts);
    const auto& kids = j.at("children");
    if (!kids.is_array() || kids.size() != static_cast<std::size_t>(2 * node->k - 1))
        throw PlanError("Toom node must carry exactly 2k-1 children");
    for (const auto& cj : kids) node->children.push_back(plan_from_json(cj));
    return node;
}

inline std::string plan_to_string(const InstructionTree& node) { return plan_to_json(node).dump(); }

// FNV-1a over the serialized form; stable across runs.
inline std::uint64_t plan_hash(const InstructionTree& node) {
    std::string s = plan_to_string(node);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace hymul
