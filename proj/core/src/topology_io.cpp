#include "meshroute/topology_io.hpp"

#include <algorithm>
#include <utility>
#include <vector>

#include <json.hpp>

#include "meshroute/errors.hpp"

namespace meshroute {

namespace {

using nlohmann::json;

double require_number(const json& obj, const char* field) {
    if (!obj.contains(field) || !obj[field].is_number()) {
        throw FormatError(std::string("topology file: missing or non-numeric field '") +
                          field + "'");
    }
    return obj[field].get<double>();
}

}  // namespace

std::string save_topology(const Topology& topology) {
    json doc;
    doc["version"] = 1;
    doc["area"] = {{"width", topology.area().width}, {"height", topology.area().height}};
    doc["coverage_radius"] = topology.coverage_radius();

    json nodes = json::array();
    for (std::size_t i = 0; i < topology.node_count(); ++i) {
        const NodeAttrs& n = topology.nodes()[i];
        nodes.push_back({{"id", i + 1},
                         {"x", n.x},
                         {"y", n.y},
                         {"delay_ms", n.delay_ms},
                         {"bandwidth_mbps", n.bandwidth_mbps}});
    }
    doc["nodes"] = std::move(nodes);

    json edges = json::array();
    for (const auto& [u, v] : topology.edges()) {
        edges.push_back({u, v});
    }
    doc["edges"] = std::move(edges);

    return doc.dump(2) + "\n";
}

Topology load_topology(std::string_view text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
        throw FormatError("topology file: not a valid JSON document");
    }

    if (!doc.contains("version") || !doc["version"].is_number_integer() ||
        doc["version"].get<int>() != 1) {
        throw FormatError("topology file: field 'version' must be the integer 1");
    }
    if (!doc.contains("area") || !doc["area"].is_object()) {
        throw FormatError("topology file: missing object field 'area'");
    }
    Area area{require_number(doc["area"], "width"), require_number(doc["area"], "height")};
    if (!(area.width > 0.0) || !(area.height > 0.0)) {
        throw FormatError("topology file: field 'area' dimensions must be > 0");
    }
    const double radius = require_number(doc, "coverage_radius");
    if (!(radius > 0.0)) {
        throw FormatError("topology file: field 'coverage_radius' must be > 0");
    }

    if (!doc.contains("nodes") || !doc["nodes"].is_array() || doc["nodes"].empty()) {
        throw FormatError("topology file: field 'nodes' must be a non-empty array");
    }
    const auto& node_docs = doc["nodes"];
    std::vector<NodeAttrs> nodes(node_docs.size());
    for (std::size_t i = 0; i < node_docs.size(); ++i) {
        const json& nd = node_docs[i];
        if (!nd.is_object()) {
            throw FormatError("topology file: 'nodes' entries must be objects");
        }
        const double id = require_number(nd, "id");
        if (id != static_cast<double>(i + 1)) {
            throw FormatError("topology file: field 'nodes[].id' must run 1..n in order");
        }
        NodeAttrs& n = nodes[i];
        n.x = require_number(nd, "x");
        n.y = require_number(nd, "y");
        n.delay_ms = require_number(nd, "delay_ms");
        n.bandwidth_mbps = require_number(nd, "bandwidth_mbps");
        if (n.x < 0.0 || n.x > area.width || n.y < 0.0 || n.y > area.height) {
            throw FormatError("topology file: field 'nodes[].x/y' outside 'area'");
        }
        if (!(n.delay_ms >= 0.0)) {
            throw FormatError("topology file: field 'nodes[].delay_ms' must be >= 0");
        }
        if (!(n.bandwidth_mbps > 0.0)) {
            throw FormatError("topology file: field 'nodes[].bandwidth_mbps' must be > 0");
        }
    }

    if (!doc.contains("edges") || !doc["edges"].is_array()) {
        throw FormatError("topology file: missing array field 'edges'");
    }
    std::vector<std::pair<NodeId, NodeId>> stored;
    for (const json& ed : doc["edges"]) {
        if (!ed.is_array() || ed.size() != 2 || !ed[0].is_number_integer() ||
            !ed[1].is_number_integer()) {
            throw FormatError("topology file: 'edges' entries must be [u, v] integer pairs");
        }
        const auto u = ed[0].get<std::int64_t>();
        const auto v = ed[1].get<std::int64_t>();
        if (u < 1 || v < 1 || u >= v || static_cast<std::size_t>(v) > nodes.size()) {
            throw FormatError("topology file: 'edges' entries must satisfy 1 <= u < v <= n");
        }
        stored.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }

    if (!std::is_sorted(stored.begin(), stored.end())) {
        throw FormatError("topology file: field 'edges' must be sorted lexicographically");
    }

    Topology topology(std::move(nodes), area, radius);
    if (stored != topology.edges()) {
        throw FormatError(
            "topology file: field 'edges' inconsistent with positions and coverage_radius");
    }
    return topology;
}

}  // namespace meshroute
