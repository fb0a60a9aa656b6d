#include "meshroute/format.hpp"

#include <array>
#include <charconv>
#include <system_error>

#include "meshroute/errors.hpp"

namespace meshroute {

std::string format_double(double value) {
    std::array<char, 64> buffer{};
    const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    if (result.ec != std::errc()) {
        throw ParameterError("format_double: conversion failed");
    }
    return std::string(buffer.data(), result.ptr);
}

std::string path_to_string(const Path& path) {
    std::string out;
    for (std::size_t i = 0; i < path.nodes.size(); ++i) {
        if (i > 0) {
            out.push_back('-');
        }
        out += std::to_string(path.nodes[i]);
    }
    return out;
}

Path path_from_string(std::string_view text) {
    Path path;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t dash = std::min(text.find('-', start), text.size());
        const std::string_view token = text.substr(start, dash - start);
        NodeId id = 0;
        const auto result = std::from_chars(token.data(), token.data() + token.size(), id);
        if (result.ec != std::errc() || result.ptr != token.data() + token.size() || id == 0) {
            throw FormatError("path '" + std::string(text) +
                              "': expected dash-separated node ids");
        }
        path.nodes.push_back(id);
        start = dash + 1;
    }
    return path;
}

std::string trace_header() {
    return "generation\tchosen_method\tbest_cost_rws\tbest_cost_ts\tbest_cost_sss\t"
           "best_cost_bs\tbest_cost_sigss\tbest_cost_rs\tpopulation_best_cost\t"
           "population_best_path";
}

std::string trace_line(const GenerationReport& report) {
    std::string out = std::to_string(report.generation);
    out.push_back('\t');
    out += selection_method_name(report.chosen_method);
    for (double cost : report.method_best_cost) {
        out.push_back('\t');
        out += format_double(cost);
    }
    out.push_back('\t');
    out += format_double(report.population_best_cost);
    out.push_back('\t');
    out += path_to_string(report.population_best_path);
    return out;
}

std::string front_snapshot_text(const FrontSnapshot& snapshot,
                                const ObjectiveVector& reference, double hypervolume_value) {
    std::string out = "# generation\t" + std::to_string(snapshot.generation) + "\n";
    out += "# reference_point";
    for (double r : reference) {
        out.push_back('\t');
        out += format_double(r);
    }
    out.push_back('\n');
    out += "# hypervolume\t" + format_double(hypervolume_value) + "\n";
    out += "path\tdelay_ms\tbandwidth_mbps\tbandwidth_cost\thops\n";
    for (const ArchiveEntry& entry : snapshot.entries) {
        out += path_to_string(entry.path);
        out.push_back('\t');
        out += format_double(entry.qos.delay_ms);
        out.push_back('\t');
        out += format_double(entry.qos.bandwidth_mbps);
        out.push_back('\t');
        out += format_double(bandwidth_transform(entry.qos.bandwidth_mbps));
        out.push_back('\t');
        out += std::to_string(entry.qos.hops);
        out.push_back('\n');
    }
    return out;
}

}  // namespace meshroute
