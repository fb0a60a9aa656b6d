#include <algorithm>
#include <charconv>
#include <cstdint>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "bundle.hpp"
#include "meshroute/errors.hpp"
#include "meshroute/format.hpp"
#include "meshroute/genetic.hpp"
#include "meshroute/oracle.hpp"
#include "meshroute/pareto.hpp"
#include "meshroute/qos.hpp"
#include "meshroute/topology.hpp"
#include "meshroute/topology_io.hpp"
#include "meshroute/version.hpp"

namespace meshroute::cli {
namespace {

// ---------------------------------------------------------------------------
// Flag value parsing. Comma-joined tuples arrive as plain strings so the
// exact same parsers serve command-line flags and manifest replay.

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(sep, start), text.size());
        out.emplace_back(text.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

double parse_double(std::string_view token, const std::string& what) {
    double value = 0.0;
    const auto result = std::from_chars(token.data(), token.data() + token.size(), value);
    if (result.ec != std::errc() || result.ptr != token.data() + token.size()) {
        throw ParameterError(what + ": '" + std::string(token) + "' is not a number");
    }
    return value;
}

std::int64_t parse_int(std::string_view token, const std::string& what) {
    std::int64_t value = 0;
    const auto result = std::from_chars(token.data(), token.data() + token.size(), value);
    if (result.ec != std::errc() || result.ptr != token.data() + token.size()) {
        throw ParameterError(what + ": '" + std::string(token) + "' is not an integer");
    }
    return value;
}

std::uint64_t parse_u64(std::string_view token, const std::string& what) {
    std::uint64_t value = 0;
    const auto result = std::from_chars(token.data(), token.data() + token.size(), value);
    if (result.ec != std::errc() || result.ptr != token.data() + token.size()) {
        throw ParameterError(what + ": '" + std::string(token) +
                             "' is not a non-negative integer");
    }
    return value;
}

std::vector<double> parse_doubles(const std::string& text, std::size_t count,
                                  const std::string& what) {
    const auto tokens = split(text, ',');
    if (tokens.size() != count) {
        throw ParameterError(what + ": expected " + std::to_string(count) +
                             " comma-separated values, got '" + text + "'");
    }
    std::vector<double> out;
    out.reserve(count);
    for (const auto& token : tokens) {
        out.push_back(parse_double(token, what));
    }
    return out;
}

Weights parse_weights(const std::string& text) {
    const auto v = parse_doubles(text, 3, "--weights");
    return {v[0], v[1], v[2]};
}

Constraints parse_constraints(const std::string& text) {
    const auto tokens = split(text, ',');
    if (tokens.size() != 3) {
        throw ParameterError("--constraints: expected dmax,bmin,hmax, got '" + text + "'");
    }
    Constraints c;
    c.d_max_ms = parse_double(tokens[0], "--constraints dmax");
    c.b_min_mbps = parse_double(tokens[1], "--constraints bmin");
    c.hops_max = static_cast<int>(parse_int(tokens[2], "--constraints hmax"));
    return c;
}

Area parse_area(const std::string& text) {
    const auto v = parse_doubles(text, 2, "--area");
    return {v[0], v[1]};
}

std::pair<double, double> parse_range(const std::string& text, const std::string& what) {
    const auto v = parse_doubles(text, 2, what);
    return {v[0], v[1]};
}

RouteQuery parse_route(const std::string& text, const std::string& what) {
    const auto tokens = split(text, ',');
    if (tokens.size() != 2) {
        throw ParameterError(what + ": expected s,d node ids, got '" + text + "'");
    }
    RouteQuery query;
    query.source = static_cast<NodeId>(parse_u64(tokens[0], what));
    query.destination = static_cast<NodeId>(parse_u64(tokens[1], what));
    return query;
}

std::vector<int> parse_checkpoints(const std::string& text) {
    std::vector<int> out;
    for (const auto& token : split(text, ',')) {
        out.push_back(static_cast<int>(parse_int(token, "--checkpoints")));
    }
    return out;
}

BandwidthRule parse_rule(const std::string& text) {
    if (text == "paper-max") {
        return BandwidthRule::paper_literal_max;
    }
    if (text == "bottleneck-min") {
        return BandwidthRule::bottleneck_min;
    }
    throw ParameterError("--bandwidth-rule: expected paper-max or bottleneck-min, got '" +
                         text + "'");
}

// ---------------------------------------------------------------------------
// Canonical manifest serialization of parsed values.

std::string rule_name(BandwidthRule rule) {
    return rule == BandwidthRule::paper_literal_max ? "paper-max" : "bottleneck-min";
}

std::string weights_str(const Weights& w) {
    return format_double(w.alpha1) + "," + format_double(w.alpha2) + "," +
           format_double(w.alpha3);
}

std::string constraints_str(const Constraints& c) {
    return format_double(c.d_max_ms) + "," + format_double(c.b_min_mbps) + "," +
           std::to_string(c.hops_max);
}

std::string pair_str(double a, double b) {
    return format_double(a) + "," + format_double(b);
}

std::string route_str(const RouteQuery& q) {
    return std::to_string(q.source) + "," + std::to_string(q.destination);
}

std::string checkpoints_str(const std::vector<int>& checkpoints) {
    std::string out;
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (i > 0) {
            out.push_back(',');
        }
        out += std::to_string(checkpoints[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Shared table plumbing.

void append_qos_cells(std::string& row, const QosVector& qos) {
    row += format_double(qos.delay_ms);
    row.push_back('\t');
    row += format_double(qos.bandwidth_mbps);
    row.push_back('\t');
    row += format_double(bandwidth_transform(qos.bandwidth_mbps));
    row.push_back('\t');
    row += std::to_string(qos.hops);
}

bool entry_order(const ArchiveEntry& a, const ArchiveEntry& b) {
    if (a.qos.delay_ms != b.qos.delay_ms) {
        return a.qos.delay_ms < b.qos.delay_ms;
    }
    if (a.qos.hops != b.qos.hops) {
        return a.qos.hops < b.qos.hops;
    }
    return a.path.nodes < b.path.nodes;
}

std::vector<ObjectiveVector> sorted_unique_front(const ParetoArchive& archive) {
    auto front = archive.front();
    std::sort(front.begin(), front.end());
    front.erase(std::unique(front.begin(), front.end()), front.end());
    return front;
}

// ---------------------------------------------------------------------------
// gen

struct GenOptions {
    std::uint64_t seed = 0;
    std::size_t nodes = 50;
    Area area{1000.0, 1000.0};
    double radius = 200.0;
    AttrRanges ranges;
    std::optional<RouteQuery> require_route;
};

Bundle exec_gen(const GenOptions& opt) {
    if (opt.require_route) {
        const RouteQuery& q = *opt.require_route;
        if (q.source < 1 || q.destination < 1 || q.source > opt.nodes ||
            q.destination > opt.nodes || q.source == q.destination) {
            throw ParameterError("--require-route: node ids must be distinct and within 1.." +
                                 std::to_string(opt.nodes));
        }
    }

    std::uint64_t seed = opt.seed;
    Topology topology = generate_topology(opt.nodes, opt.area, opt.radius, opt.ranges, seed);
    if (opt.require_route) {
        int retries = 0;
        while (!route_exists(topology, *opt.require_route)) {
            if (retries == 100) {
                throw NoRouteError("no seed in " + std::to_string(opt.seed) + ".." +
                                   std::to_string(seed) + " connects nodes " +
                                   route_str(*opt.require_route));
            }
            std::cerr << "route " << route_str(*opt.require_route)
                      << " unreachable with seed " << seed << "; retrying with seed "
                      << seed + 1 << "\n";
            ++retries;
            ++seed;
            topology = generate_topology(opt.nodes, opt.area, opt.radius, opt.ranges, seed);
        }
    }

    Manifest manifest;
    manifest.set("tool_version", kVersion);
    manifest.set("command", "gen");
    manifest.set("seed", std::to_string(opt.seed));
    manifest.set("nodes", std::to_string(opt.nodes));
    manifest.set("area", pair_str(opt.area.width, opt.area.height));
    manifest.set("radius", format_double(opt.radius));
    manifest.set("delay_range", pair_str(opt.ranges.delay_min, opt.ranges.delay_max));
    manifest.set("bandwidth_range",
                 pair_str(opt.ranges.bandwidth_min, opt.ranges.bandwidth_max));
    manifest.set("require_route",
                 opt.require_route ? route_str(*opt.require_route) : "-");

    Bundle bundle;
    bundle.add("manifest", manifest.serialize());
    bundle.add("topology", save_topology(topology));
    return bundle;
}

GenOptions gen_from_manifest(const Manifest& m) {
    GenOptions opt;
    opt.seed = parse_u64(m.get("seed"), "manifest seed");
    opt.nodes = static_cast<std::size_t>(parse_u64(m.get("nodes"), "manifest nodes"));
    opt.area = parse_area(m.get("area"));
    opt.radius = parse_double(m.get("radius"), "manifest radius");
    const auto delay = parse_range(m.get("delay_range"), "manifest delay_range");
    const auto bandwidth = parse_range(m.get("bandwidth_range"), "manifest bandwidth_range");
    opt.ranges = {delay.first, delay.second, bandwidth.first, bandwidth.second};
    if (const auto route = m.get("require_route"); route != "-") {
        opt.require_route = parse_route(route, "manifest require_route");
    }
    return opt;
}

// ---------------------------------------------------------------------------
// run

struct RunOptions {
    std::string topology;
    std::uint64_t seed = 0;
    NodeId source = 1;
    NodeId destination = 0;  // 0 resolves to the highest node id
    int population = 50;
    int generations = 100;
    double crossover_prob = 0.75;
    double mutation_prob = 0.01;
    Weights weights;
    Constraints constraints;
    BandwidthRule rule = BandwidthRule::paper_literal_max;
    std::string paths_file;
    bool oracle_check = false;
};

std::vector<std::pair<std::string, Path>> parse_named_paths(const std::string& text) {
    std::vector<std::pair<std::string, Path>> out;
    for (const std::string& raw : split(text, '\n')) {
        std::string line = raw;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        std::vector<std::string> tokens;
        std::size_t at = 0;
        while (at < line.size()) {
            const std::size_t start = line.find_first_not_of(" \t", at);
            if (start == std::string::npos) {
                break;
            }
            const std::size_t end =
                std::min(line.find_first_of(" \t", start), line.size());
            tokens.push_back(line.substr(start, end - start));
            at = end;
        }
        if (tokens.empty() || tokens.front().front() == '#') {
            continue;
        }
        if (tokens.size() > 2) {
            throw FormatError("paths file: expected '[name] path' per line, got '" + line +
                              "'");
        }
        const std::string name =
            tokens.size() == 2 ? tokens.front() : "P" + std::to_string(out.size() + 1);
        out.emplace_back(name, path_from_string(tokens.back()));
    }
    if (out.empty()) {
        throw FormatError("paths file: no paths found");
    }
    return out;
}

GaConfig ga_config_of(const RunOptions& opt) {
    GaConfig config;
    config.population_size = opt.population;
    config.generations = opt.generations;
    config.crossover_prob = opt.crossover_prob;
    config.mutation_prob = opt.mutation_prob;
    config.weights = opt.weights;
    config.constraints = opt.constraints;
    config.bandwidth_rule = opt.rule;
    config.seed = opt.seed;
    return config;
}

Bundle exec_run(const RunOptions& opt) {
    const Topology topology = load_topology(read_file(opt.topology));
    const RouteQuery query{
        opt.source,
        opt.destination ? opt.destination
                        : static_cast<NodeId>(topology.node_count())};
    const GaConfig config = ga_config_of(opt);
    const EvolveResult result = evolve(topology, query, config);

    Manifest manifest;
    manifest.set("tool_version", kVersion);
    manifest.set("command", "run");
    manifest.set("topology", opt.topology);
    manifest.set("seed", std::to_string(opt.seed));
    manifest.set("source", std::to_string(query.source));
    manifest.set("destination", std::to_string(query.destination));
    manifest.set("population", std::to_string(opt.population));
    manifest.set("generations", std::to_string(opt.generations));
    manifest.set("crossover_prob", format_double(opt.crossover_prob));
    manifest.set("mutation_prob", format_double(opt.mutation_prob));
    manifest.set("weights", weights_str(opt.weights));
    manifest.set("constraints", constraints_str(opt.constraints));
    manifest.set("bandwidth_rule", rule_name(opt.rule));
    manifest.set("paths", opt.paths_file.empty() ? "-" : opt.paths_file);
    manifest.set("oracle_check", opt.oracle_check ? "1" : "0");

    Bundle bundle;
    bundle.add("manifest", manifest.serialize());

    std::string best = "path\t" + path_to_string(result.best.path) + "\n";
    best += "delay_ms\t" + format_double(result.best.qos.delay_ms) + "\n";
    best += "bandwidth_mbps\t" + format_double(result.best.qos.bandwidth_mbps) + "\n";
    best += "bandwidth_cost\t" +
            format_double(bandwidth_transform(result.best.qos.bandwidth_mbps)) + "\n";
    best += "hops\t" + std::to_string(result.best.qos.hops) + "\n";
    best += "cost\t" + format_double(result.best.cost) + "\n";
    best += "fitness\t" + format_double(cost_to_fitness(result.best.cost)) + "\n";
    best += "feasible\t" +
            std::string(is_feasible(result.best.qos, opt.constraints) ? "1" : "0") + "\n";
    best += "initial_best_cost\t" + format_double(result.initial_best_cost) + "\n";
    bundle.add("best", best);

    const double initial = result.initial_best_cost;
    std::string trace =
        "# normalized_cost = population_best_cost / initial_best_cost; initial_best_cost = " +
        format_double(initial) + "\n";
    trace += trace_header() + "\tnormalized_cost\n";
    for (const GenerationReport& report : result.trace) {
        trace += trace_line(report);
        trace.push_back('\t');
        trace += format_double(initial > 0.0 ? report.population_best_cost / initial : 1.0);
        trace.push_back('\n');
    }
    bundle.add("trace", trace);

    std::string methods = "index\tmethod\tmax_fitness\tmin_fitness\tmax_cost\tmin_cost\n";
    for (std::size_t m = 0; m < kSelectionOrder.size(); ++m) {
        double lo = result.trace.front().method_best_cost[m];
        double hi = lo;
        for (const GenerationReport& report : result.trace) {
            lo = std::min(lo, report.method_best_cost[m]);
            hi = std::max(hi, report.method_best_cost[m]);
        }
        methods += std::to_string(m + 1);
        methods.push_back('\t');
        methods += selection_method_name(kSelectionOrder[m]);
        methods.push_back('\t');
        methods += format_double(cost_to_fitness(lo));
        methods.push_back('\t');
        methods += format_double(cost_to_fitness(hi));
        methods.push_back('\t');
        methods += format_double(hi);
        methods.push_back('\t');
        methods += format_double(lo);
        methods.push_back('\n');
    }
    bundle.add("methods", methods);

    if (!opt.paths_file.empty()) {
        std::string table =
            "name\tpath\tdelay_ms\tbandwidth_mbps\tbandwidth_cost\thops\tcost\tfitness\t"
            "feasible\n";
        for (const auto& [name, path] : parse_named_paths(read_file(opt.paths_file))) {
            if (!validate_path(topology, query, path)) {
                throw ParameterError("paths file: '" + name +
                                     "' is not a valid route for this query");
            }
            const QosVector qos = path_qos(topology, path, opt.rule);
            const double cost = weighted_sum_cost(qos, opt.weights, opt.constraints);
            table += name;
            table.push_back('\t');
            table += path_to_string(path);
            table.push_back('\t');
            append_qos_cells(table, qos);
            table.push_back('\t');
            table += format_double(cost);
            table.push_back('\t');
            table += format_double(cost_to_fitness(cost));
            table.push_back('\t');
            table += is_feasible(qos, opt.constraints) ? "1" : "0";
            table.push_back('\n');
        }
        bundle.add("paths", table);
    }

    if (opt.oracle_check) {
        const auto optimum = exact_weighted_optimum(topology, query, opt.weights,
                                                    opt.constraints, opt.rule);
        std::string report = "oracle_found\t" + std::string(optimum ? "1" : "0") + "\n";
        if (optimum) {
            report += "oracle_path\t" + path_to_string(optimum->path) + "\n";
            report += "oracle_cost\t" + format_double(optimum->cost) + "\n";
        } else {
            report += "oracle_path\t-\n";
            report += "oracle_cost\t-\n";
        }
        report += "ga_path\t" + path_to_string(result.best.path) + "\n";
        report += "ga_cost\t" + format_double(result.best.cost) + "\n";
        const bool match =
            optimum && std::abs(optimum->cost - result.best.cost) <= 1e-9;
        report += "cost_match\t" + std::string(match ? "1" : "0") + "\n";
        bundle.add("oracle", report);
    }
    return bundle;
}

RunOptions run_from_manifest(const Manifest& m) {
    RunOptions opt;
    opt.topology = m.get("topology");
    opt.seed = parse_u64(m.get("seed"), "manifest seed");
    opt.source = static_cast<NodeId>(parse_u64(m.get("source"), "manifest source"));
    opt.destination =
        static_cast<NodeId>(parse_u64(m.get("destination"), "manifest destination"));
    opt.population = static_cast<int>(parse_int(m.get("population"), "manifest population"));
    opt.generations =
        static_cast<int>(parse_int(m.get("generations"), "manifest generations"));
    opt.crossover_prob = parse_double(m.get("crossover_prob"), "manifest crossover_prob");
    opt.mutation_prob = parse_double(m.get("mutation_prob"), "manifest mutation_prob");
    opt.weights = parse_weights(m.get("weights"));
    opt.constraints = parse_constraints(m.get("constraints"));
    opt.rule = parse_rule(m.get("bandwidth_rule"));
    if (const auto paths = m.get("paths"); paths != "-") {
        opt.paths_file = paths;
    }
    opt.oracle_check = m.get("oracle_check") == "1";
    return opt;
}

// ---------------------------------------------------------------------------
// pareto

struct ParetoOptions {
    std::string topology;
    std::uint64_t seed = 0;
    NodeId source = 1;
    NodeId destination = 0;
    int population = 50;
    int generations = 0;  // 0 resolves to the last checkpoint
    std::vector<int> checkpoints = {100, 200, 1000};
    double sigma_share = 0.1;
    double crossover_prob = 0.75;
    double mutation_prob = 0.01;
    Weights weights;
    Constraints constraints;
    BandwidthRule rule = BandwidthRule::paper_literal_max;
    bool oracle_check = false;
};

std::string front_file_name(int generation) {
    std::string digits = std::to_string(generation);
    return "fronts/gen_" + std::string(6 - std::min<std::size_t>(6, digits.size()), '0') +
           digits;
}

Bundle exec_pareto(const ParetoOptions& opt) {
    if (opt.checkpoints.empty()) {
        throw ParameterError("--checkpoints: at least one checkpoint required");
    }
    for (int c : opt.checkpoints) {
        if (c < 1) {
            throw ParameterError("--checkpoints: values must be >= 1");
        }
    }
    const int generations =
        opt.generations > 0 ? opt.generations
                            : *std::max_element(opt.checkpoints.begin(),
                                                opt.checkpoints.end());
    std::set<int> effective;
    for (int c : opt.checkpoints) {
        if (c <= generations) {
            effective.insert(c);
        }
    }
    effective.insert(generations);
    const std::vector<int> checkpoints(effective.begin(), effective.end());

    const Topology topology = load_topology(read_file(opt.topology));
    const RouteQuery query{
        opt.source,
        opt.destination ? opt.destination
                        : static_cast<NodeId>(topology.node_count())};

    GaConfig config;
    config.population_size = opt.population;
    config.generations = generations;
    config.crossover_prob = opt.crossover_prob;
    config.mutation_prob = opt.mutation_prob;
    config.weights = opt.weights;
    config.constraints = opt.constraints;
    config.bandwidth_rule = opt.rule;
    config.seed = opt.seed;

    NsgaParams params;
    params.sigma_share = opt.sigma_share;
    params.population_size = opt.population;
    params.generations = generations;
    params.checkpoints = checkpoints;

    const NsgaResult result = nsga_evolve(topology, query, config, params);
    const ObjectiveVector reference = {opt.constraints.d_max_ms + 1.0, 2.0,
                                       static_cast<double>(opt.constraints.hops_max + 1)};

    Manifest manifest;
    manifest.set("tool_version", kVersion);
    manifest.set("command", "pareto");
    manifest.set("topology", opt.topology);
    manifest.set("seed", std::to_string(opt.seed));
    manifest.set("source", std::to_string(query.source));
    manifest.set("destination", std::to_string(query.destination));
    manifest.set("population", std::to_string(opt.population));
    manifest.set("generations", std::to_string(generations));
    manifest.set("checkpoints", checkpoints_str(checkpoints));
    manifest.set("sigma_share", format_double(opt.sigma_share));
    manifest.set("crossover_prob", format_double(opt.crossover_prob));
    manifest.set("mutation_prob", format_double(opt.mutation_prob));
    manifest.set("weights", weights_str(opt.weights));
    manifest.set("constraints", constraints_str(opt.constraints));
    manifest.set("bandwidth_rule", rule_name(opt.rule));
    manifest.set("oracle_check", opt.oracle_check ? "1" : "0");

    Bundle bundle;
    bundle.add("manifest", manifest.serialize());

    std::string series = "generation\thypervolume\n";
    for (const FrontSnapshot& snapshot : result.snapshots) {
        std::vector<ObjectiveVector> front;
        front.reserve(snapshot.entries.size());
        for (const ArchiveEntry& entry : snapshot.entries) {
            front.push_back(entry.objectives);
        }
        const double volume = hypervolume(front, reference);
        bundle.add(front_file_name(snapshot.generation),
                   front_snapshot_text(snapshot, reference, volume));
        series += std::to_string(snapshot.generation);
        series.push_back('\t');
        series += format_double(volume);
        series.push_back('\n');
    }
    bundle.add("fronts/hypervolume", series);

    if (opt.oracle_check) {
        const ParetoArchive exact =
            exact_pareto_front(topology, query, opt.constraints, opt.rule);
        const auto got = sorted_unique_front(result.archive);
        const auto want = sorted_unique_front(exact);
        std::vector<ObjectiveVector> missing;
        std::set_difference(want.begin(), want.end(), got.begin(), got.end(),
                            std::back_inserter(missing));
        std::vector<ObjectiveVector> extra;
        std::set_difference(got.begin(), got.end(), want.begin(), want.end(),
                            std::back_inserter(extra));

        std::string report = "archive_size\t" + std::to_string(result.archive.size()) + "\n";
        report += "exact_size\t" + std::to_string(exact.size()) + "\n";
        report += "front_match\t" +
                  std::string(missing.empty() && extra.empty() ? "1" : "0") + "\n";
        report += "missing_count\t" + std::to_string(missing.size()) + "\n";
        report += "extra_count\t" + std::to_string(extra.size()) + "\n";
        auto append_rows = [&report](const char* tag,
                                     const std::vector<ObjectiveVector>& rows) {
            for (const ObjectiveVector& v : rows) {
                report += tag;
                for (double x : v) {
                    report.push_back('\t');
                    report += format_double(x);
                }
                report.push_back('\n');
            }
        };
        append_rows("missing", missing);
        append_rows("extra", extra);
        bundle.add("oracle", report);
    }
    return bundle;
}

ParetoOptions pareto_from_manifest(const Manifest& m) {
    ParetoOptions opt;
    opt.topology = m.get("topology");
    opt.seed = parse_u64(m.get("seed"), "manifest seed");
    opt.source = static_cast<NodeId>(parse_u64(m.get("source"), "manifest source"));
    opt.destination =
        static_cast<NodeId>(parse_u64(m.get("destination"), "manifest destination"));
    opt.population = static_cast<int>(parse_int(m.get("population"), "manifest population"));
    opt.generations =
        static_cast<int>(parse_int(m.get("generations"), "manifest generations"));
    opt.checkpoints = parse_checkpoints(m.get("checkpoints"));
    opt.sigma_share = parse_double(m.get("sigma_share"), "manifest sigma_share");
    opt.crossover_prob = parse_double(m.get("crossover_prob"), "manifest crossover_prob");
    opt.mutation_prob = parse_double(m.get("mutation_prob"), "manifest mutation_prob");
    opt.weights = parse_weights(m.get("weights"));
    opt.constraints = parse_constraints(m.get("constraints"));
    opt.rule = parse_rule(m.get("bandwidth_rule"));
    opt.oracle_check = m.get("oracle_check") == "1";
    return opt;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOptions {
    std::string topology;
    std::uint64_t seed = 0;
    NodeId source = 1;
    NodeId destination = 0;
    int samples = 50;
    int jobs = 1;
    int population = 50;
    int generations = 100;
    double crossover_prob = 0.75;
    double mutation_prob = 0.01;
    Weights weights;
    Constraints constraints;
    BandwidthRule rule = BandwidthRule::paper_literal_max;
    double sigma_share = 0.1;
    int nsga_generations = 1000;
};

Bundle exec_sweep(const SweepOptions& opt) {
    if (opt.samples < 1) {
        throw ParameterError("--samples: must be >= 1");
    }
    const Topology topology = load_topology(read_file(opt.topology));
    const RouteQuery query{
        opt.source,
        opt.destination ? opt.destination
                        : static_cast<NodeId>(topology.node_count())};

    GaConfig config;
    config.population_size = opt.population;
    config.generations = opt.generations;
    config.crossover_prob = opt.crossover_prob;
    config.mutation_prob = opt.mutation_prob;
    config.weights = opt.weights;
    config.constraints = opt.constraints;
    config.bandwidth_rule = opt.rule;
    config.seed = opt.seed;

    const auto samples = weighted_sum_sweep(topology, query, config, opt.samples, opt.jobs);

    NsgaParams params;
    params.sigma_share = opt.sigma_share;
    params.population_size = opt.population;
    params.generations = opt.nsga_generations;
    params.checkpoints = {opt.nsga_generations};
    const NsgaResult nsga = nsga_evolve(topology, query, config, params);

    Manifest manifest;
    manifest.set("tool_version", kVersion);
    manifest.set("command", "sweep");
    manifest.set("topology", opt.topology);
    manifest.set("seed", std::to_string(opt.seed));
    manifest.set("source", std::to_string(query.source));
    manifest.set("destination", std::to_string(query.destination));
    manifest.set("samples", std::to_string(opt.samples));
    manifest.set("population", std::to_string(opt.population));
    manifest.set("generations", std::to_string(opt.generations));
    manifest.set("crossover_prob", format_double(opt.crossover_prob));
    manifest.set("mutation_prob", format_double(opt.mutation_prob));
    manifest.set("weights", weights_str(opt.weights));
    manifest.set("constraints", constraints_str(opt.constraints));
    manifest.set("bandwidth_rule", rule_name(opt.rule));
    manifest.set("sigma_share", format_double(opt.sigma_share));
    manifest.set("nsga_generations", std::to_string(opt.nsga_generations));

    Bundle bundle;
    bundle.add("manifest", manifest.serialize());

    std::string table =
        "tag\talpha1\talpha2\talpha3\tpath\tdelay_ms\tbandwidth_mbps\tbandwidth_cost\thops\t"
        "cost\n";
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const SweepSample& sample = samples[i];
        table += i == 0 ? "fixed-weights" : "random-weights";
        table.push_back('\t');
        table += format_double(sample.weights.alpha1);
        table.push_back('\t');
        table += format_double(sample.weights.alpha2);
        table.push_back('\t');
        table += format_double(sample.weights.alpha3);
        table.push_back('\t');
        table += path_to_string(sample.path);
        table.push_back('\t');
        append_qos_cells(table, sample.qos);
        table.push_back('\t');
        table += format_double(sample.cost);
        table.push_back('\n');
    }
    std::vector<ArchiveEntry> entries = nsga.archive.entries();
    std::sort(entries.begin(), entries.end(), entry_order);
    for (const ArchiveEntry& entry : entries) {
        table += "pareto-archive\t-\t-\t-\t";
        table += path_to_string(entry.path);
        table.push_back('\t');
        append_qos_cells(table, entry.qos);
        table += "\t-\n";
    }
    bundle.add("sweep", table);
    return bundle;
}

SweepOptions sweep_from_manifest(const Manifest& m) {
    SweepOptions opt;
    opt.topology = m.get("topology");
    opt.seed = parse_u64(m.get("seed"), "manifest seed");
    opt.source = static_cast<NodeId>(parse_u64(m.get("source"), "manifest source"));
    opt.destination =
        static_cast<NodeId>(parse_u64(m.get("destination"), "manifest destination"));
    opt.samples = static_cast<int>(parse_int(m.get("samples"), "manifest samples"));
    opt.population = static_cast<int>(parse_int(m.get("population"), "manifest population"));
    opt.generations =
        static_cast<int>(parse_int(m.get("generations"), "manifest generations"));
    opt.crossover_prob = parse_double(m.get("crossover_prob"), "manifest crossover_prob");
    opt.mutation_prob = parse_double(m.get("mutation_prob"), "manifest mutation_prob");
    opt.weights = parse_weights(m.get("weights"));
    opt.constraints = parse_constraints(m.get("constraints"));
    opt.rule = parse_rule(m.get("bandwidth_rule"));
    opt.sigma_share = parse_double(m.get("sigma_share"), "manifest sigma_share");
    opt.nsga_generations =
        static_cast<int>(parse_int(m.get("nsga_generations"), "manifest nsga_generations"));
    return opt;
}

// ---------------------------------------------------------------------------
// oracle

struct OracleOptions {
    std::string topology;
    std::string op = "enumerate";
    NodeId source = 1;
    NodeId destination = 0;
    Weights weights;
    Constraints constraints;
    BandwidthRule rule = BandwidthRule::paper_literal_max;
    std::size_t guard = kMaxEnumerationNodes;
};

Bundle exec_oracle(const OracleOptions& opt) {
    const Topology topology = load_topology(read_file(opt.topology));
    const RouteQuery query{
        opt.source,
        opt.destination ? opt.destination
                        : static_cast<NodeId>(topology.node_count())};

    Manifest manifest;
    manifest.set("tool_version", kVersion);
    manifest.set("command", "oracle");
    manifest.set("topology", opt.topology);
    manifest.set("op", opt.op);
    manifest.set("source", std::to_string(query.source));
    manifest.set("destination", std::to_string(query.destination));
    manifest.set("weights", weights_str(opt.weights));
    manifest.set("constraints", constraints_str(opt.constraints));
    manifest.set("bandwidth_rule", rule_name(opt.rule));
    manifest.set("guard", std::to_string(opt.guard));

    std::string report;
    if (opt.op == "enumerate") {
        report =
            "path\tdelay_ms\tbandwidth_mbps\tbandwidth_cost\thops\tcost\tfeasible\n";
        for (const Path& path : enumerate_paths(topology, query, opt.guard)) {
            const QosVector qos = path_qos(topology, path, opt.rule);
            report += path_to_string(path);
            report.push_back('\t');
            append_qos_cells(report, qos);
            report.push_back('\t');
            report += format_double(weighted_sum_cost(qos, opt.weights, opt.constraints));
            report.push_back('\t');
            report += is_feasible(qos, opt.constraints) ? "1" : "0";
            report.push_back('\n');
        }
    } else if (opt.op == "optimum") {
        const auto optimum = exact_weighted_optimum(topology, query, opt.weights,
                                                    opt.constraints, opt.rule, opt.guard);
        report = "found\t" + std::string(optimum ? "1" : "0") + "\n";
        if (optimum) {
            report += "path\t" + path_to_string(optimum->path) + "\n";
            report += "delay_ms\t" + format_double(optimum->qos.delay_ms) + "\n";
            report += "bandwidth_mbps\t" + format_double(optimum->qos.bandwidth_mbps) + "\n";
            report += "hops\t" + std::to_string(optimum->qos.hops) + "\n";
            report += "cost\t" + format_double(optimum->cost) + "\n";
        }
    } else if (opt.op == "front") {
        const ParetoArchive archive =
            exact_pareto_front(topology, query, opt.constraints, opt.rule, opt.guard);
        std::vector<ArchiveEntry> entries = archive.entries();
        std::sort(entries.begin(), entries.end(), entry_order);
        report = "path\tdelay_ms\tbandwidth_mbps\tbandwidth_cost\thops\n";
        for (const ArchiveEntry& entry : entries) {
            report += path_to_string(entry.path);
            report.push_back('\t');
            append_qos_cells(report, entry.qos);
            report.push_back('\n');
        }
    } else if (opt.op == "dijkstra") {
        const DelayPath shortest = dijkstra_delay(topology, query);
        report = "path\t" + path_to_string(shortest.path) + "\n";
        report += "delay_ms\t" + format_double(shortest.delay_ms) + "\n";
    } else {
        throw ParameterError("--op: expected enumerate, optimum, front or dijkstra, got '" +
                             opt.op + "'");
    }

    Bundle bundle;
    bundle.add("manifest", manifest.serialize());
    bundle.add("oracle", report);
    return bundle;
}

OracleOptions oracle_from_manifest(const Manifest& m) {
    OracleOptions opt;
    opt.topology = m.get("topology");
    opt.op = m.get("op");
    opt.source = static_cast<NodeId>(parse_u64(m.get("source"), "manifest source"));
    opt.destination =
        static_cast<NodeId>(parse_u64(m.get("destination"), "manifest destination"));
    opt.weights = parse_weights(m.get("weights"));
    opt.constraints = parse_constraints(m.get("constraints"));
    opt.rule = parse_rule(m.get("bandwidth_rule"));
    opt.guard = static_cast<std::size_t>(parse_u64(m.get("guard"), "manifest guard"));
    return opt;
}

// ---------------------------------------------------------------------------

Bundle replay(const Manifest& manifest) {
    const std::string command = manifest.get("command");
    if (command == "gen") {
        return exec_gen(gen_from_manifest(manifest));
    }
    if (command == "run") {
        return exec_run(run_from_manifest(manifest));
    }
    if (command == "pareto") {
        return exec_pareto(pareto_from_manifest(manifest));
    }
    if (command == "sweep") {
        return exec_sweep(sweep_from_manifest(manifest));
    }
    if (command == "oracle") {
        return exec_oracle(oracle_from_manifest(manifest));
    }
    throw ParameterError("manifest: unknown command '" + command + "'");
}

struct FlagSet {
    std::string out = "out";
    std::string weights = "0.5,0.15,0.35";
    std::string constraints = "50,1,10";
    std::string bandwidth_rule = "paper-max";
    std::uint64_t seed = 0;
    std::string topology;
    NodeId source = 1;
    NodeId destination = 0;
    int population = 50;
    int generations = 100;
    double crossover_prob = 0.75;
    double mutation_prob = 0.01;
};

void add_common_ga_flags(CLI::App* cmd, FlagSet& flags, bool default_gens_sentinel = false) {
    cmd->add_option("--topology", flags.topology, "topology file produced by gen")
        ->required();
    cmd->add_option("--seed", flags.seed, "base RNG seed")->required();
    cmd->add_option("--out", flags.out, "output bundle directory")
        ->capture_default_str();
    cmd->add_option("-s,--source", flags.source, "source node id")->capture_default_str();
    cmd->add_option("-d,--destination", flags.destination,
                    "destination node id (default: highest node id)");
    cmd->add_option("--pop", flags.population, "population size")->capture_default_str();
    if (default_gens_sentinel) {
        cmd->add_option("--gens", flags.generations,
                        "generation count (default: last checkpoint)");
    } else {
        cmd->add_option("--gens", flags.generations, "generation count")
            ->capture_default_str();
    }
    cmd->add_option("--pc", flags.crossover_prob, "crossover probability")
        ->capture_default_str();
    cmd->add_option("--pm", flags.mutation_prob, "mutation probability")
        ->capture_default_str();
    cmd->add_option("--weights", flags.weights, "objective weights a1,a2,a3")
        ->capture_default_str();
    cmd->add_option("--constraints", flags.constraints, "QoS bounds dmax,bmin,hmax")
        ->capture_default_str();
    cmd->add_option("--bandwidth-rule", flags.bandwidth_rule,
                    "path bandwidth aggregation: paper-max or bottleneck-min")
        ->capture_default_str();
}

int dispatch(int argc, char** argv) {
    CLI::App app{"evolutionary multi-QoS route search on random geometric mesh graphs"};
    app.require_subcommand(0, 1);
    app.set_version_flag("--version", std::string(kVersion));
    app.set_help_all_flag("--help-all", "print help for every subcommand");

    std::string from_manifest;
    std::string replay_out = "out";
    app.add_option("--from-manifest", from_manifest,
                   "replay a recorded manifest, reproducing its bundle");
    app.add_option("--out", replay_out, "output directory for --from-manifest")
        ->capture_default_str();

    // gen
    auto* gen_cmd = app.add_subcommand("gen", "generate a random geometric topology");
    std::uint64_t gen_seed = 0;
    std::size_t gen_nodes = 50;
    std::string gen_area = "1000,1000";
    double gen_radius = 200.0;
    std::string gen_delay_range = "1,10";
    std::string gen_bandwidth_range = "1,10";
    std::string gen_require;
    std::string gen_out = "out";
    gen_cmd->add_option("--seed", gen_seed, "base RNG seed")->required();
    gen_cmd->add_option("--nodes", gen_nodes, "node count")->capture_default_str();
    gen_cmd->add_option("--area", gen_area, "deployment area width,height in metres")
        ->capture_default_str();
    gen_cmd->add_option("--radius", gen_radius, "coverage radius in metres")
        ->capture_default_str();
    gen_cmd->add_option("--delay-range", gen_delay_range, "per-node delay bounds lo,hi (ms)")
        ->capture_default_str();
    gen_cmd
        ->add_option("--bandwidth-range", gen_bandwidth_range,
                     "per-node bandwidth bounds lo,hi (Mbps)")
        ->capture_default_str();
    gen_cmd->add_option("--require-route", gen_require,
                        "retry seed+1 (up to 100 times) until nodes s,d are connected");
    gen_cmd->add_option("--out", gen_out, "output bundle directory")->capture_default_str();

    // run
    auto* run_cmd =
        app.add_subcommand("run", "evolve a route with the adaptive genetic algorithm");
    FlagSet run_flags;
    std::string run_paths;
    bool run_oracle_check = false;
    add_common_ga_flags(run_cmd, run_flags);
    run_cmd->add_option("--paths", run_paths,
                        "file of named routes to report QoS for (one per line)");
    run_cmd->add_flag("--oracle-check", run_oracle_check,
                      "compare the result against the exhaustive optimum");

    // pareto
    auto* pareto_cmd =
        app.add_subcommand("pareto", "evolve a non-dominated route set with NSGA");
    FlagSet pareto_flags;
    pareto_flags.generations = 0;
    std::string pareto_checkpoints = "100,200,1000";
    double pareto_sigma = 0.1;
    bool pareto_oracle_check = false;
    add_common_ga_flags(pareto_cmd, pareto_flags, true);
    pareto_cmd
        ->add_option("--checkpoints", pareto_checkpoints,
                     "generations at which to snapshot the archive")
        ->capture_default_str();
    pareto_cmd->add_option("--sigma-share", pareto_sigma, "niche radius for fitness sharing")
        ->capture_default_str();
    pareto_cmd->add_flag("--oracle-check", pareto_oracle_check,
                         "diff the final archive against the exhaustive front");

    // sweep
    auto* sweep_cmd = app.add_subcommand(
        "sweep", "correlate weighted-sum winners with the NSGA archive");
    FlagSet sweep_flags;
    int sweep_samples = 50;
    int sweep_jobs = 1;
    double sweep_sigma = 0.1;
    int sweep_nsga_gens = 1000;
    add_common_ga_flags(sweep_cmd, sweep_flags);
    sweep_cmd->add_option("--samples", sweep_samples, "number of weight triples to run")
        ->capture_default_str();
    sweep_cmd->add_option("--jobs", sweep_jobs, "concurrent samples")->capture_default_str();
    sweep_cmd->add_option("--sigma-share", sweep_sigma, "niche radius for fitness sharing")
        ->capture_default_str();
    sweep_cmd
        ->add_option("--nsga-gens", sweep_nsga_gens, "generations for the archive run")
        ->capture_default_str();

    // oracle
    auto* oracle_cmd =
        app.add_subcommand("oracle", "exhaustive ground truth on small topologies");
    OracleOptions oracle_opt;
    std::string oracle_weights = "0.5,0.15,0.35";
    std::string oracle_constraints = "50,1,10";
    std::string oracle_rule = "paper-max";
    std::string oracle_out = "out";
    oracle_cmd->add_option("--topology", oracle_opt.topology, "topology file")->required();
    oracle_cmd
        ->add_option("--op", oracle_opt.op,
                     "one of: enumerate, optimum, front, dijkstra")
        ->capture_default_str();
    oracle_cmd->add_option("-s,--source", oracle_opt.source, "source node id")
        ->capture_default_str();
    oracle_cmd->add_option("-d,--destination", oracle_opt.destination,
                           "destination node id (default: highest node id)");
    oracle_cmd->add_option("--weights", oracle_weights, "objective weights a1,a2,a3")
        ->capture_default_str();
    oracle_cmd->add_option("--constraints", oracle_constraints, "QoS bounds dmax,bmin,hmax")
        ->capture_default_str();
    oracle_cmd->add_option("--bandwidth-rule", oracle_rule,
                           "path bandwidth aggregation: paper-max or bottleneck-min")
        ->capture_default_str();
    oracle_cmd->add_option("--guard", oracle_opt.guard, "enumeration node-count guard")
        ->capture_default_str();
    oracle_cmd->add_option("--out", oracle_out, "output bundle directory")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (!from_manifest.empty()) {
        if (app.get_subcommands().size() > 0) {
            throw ParameterError("--from-manifest cannot be combined with a subcommand");
        }
        std::string text;
        try {
            text = read_file(from_manifest);
        } catch (const FormatError& e) {
            throw ParameterError(e.what());
        }
        const Bundle bundle = replay(Manifest::parse(text));
        write_bundle(replay_out, bundle);
        std::cout << "replayed " << from_manifest << " into " << replay_out << " ("
                  << bundle.files.size() << " files)\n";
        return 0;
    }

    Bundle bundle;
    std::string out_dir;
    if (gen_cmd->parsed()) {
        GenOptions opt;
        opt.seed = gen_seed;
        opt.nodes = gen_nodes;
        opt.area = parse_area(gen_area);
        opt.radius = gen_radius;
        const auto delay = parse_range(gen_delay_range, "--delay-range");
        const auto bandwidth = parse_range(gen_bandwidth_range, "--bandwidth-range");
        opt.ranges = {delay.first, delay.second, bandwidth.first, bandwidth.second};
        if (!gen_require.empty()) {
            opt.require_route = parse_route(gen_require, "--require-route");
        }
        bundle = exec_gen(opt);
        out_dir = gen_out;
    } else if (run_cmd->parsed()) {
        RunOptions opt;
        opt.topology = run_flags.topology;
        opt.seed = run_flags.seed;
        opt.source = run_flags.source;
        opt.destination = run_flags.destination;
        opt.population = run_flags.population;
        opt.generations = run_flags.generations;
        opt.crossover_prob = run_flags.crossover_prob;
        opt.mutation_prob = run_flags.mutation_prob;
        opt.weights = parse_weights(run_flags.weights);
        opt.constraints = parse_constraints(run_flags.constraints);
        opt.rule = parse_rule(run_flags.bandwidth_rule);
        opt.paths_file = run_paths;
        opt.oracle_check = run_oracle_check;
        bundle = exec_run(opt);
        out_dir = run_flags.out;
    } else if (pareto_cmd->parsed()) {
        ParetoOptions opt;
        opt.topology = pareto_flags.topology;
        opt.seed = pareto_flags.seed;
        opt.source = pareto_flags.source;
        opt.destination = pareto_flags.destination;
        opt.population = pareto_flags.population;
        opt.generations = pareto_flags.generations;
        opt.checkpoints = parse_checkpoints(pareto_checkpoints);
        opt.sigma_share = pareto_sigma;
        opt.crossover_prob = pareto_flags.crossover_prob;
        opt.mutation_prob = pareto_flags.mutation_prob;
        opt.weights = parse_weights(pareto_flags.weights);
        opt.constraints = parse_constraints(pareto_flags.constraints);
        opt.rule = parse_rule(pareto_flags.bandwidth_rule);
        opt.oracle_check = pareto_oracle_check;
        bundle = exec_pareto(opt);
        out_dir = pareto_flags.out;
    } else if (sweep_cmd->parsed()) {
        SweepOptions opt;
        opt.topology = sweep_flags.topology;
        opt.seed = sweep_flags.seed;
        opt.source = sweep_flags.source;
        opt.destination = sweep_flags.destination;
        opt.samples = sweep_samples;
        opt.jobs = sweep_jobs;
        opt.population = sweep_flags.population;
        opt.generations = sweep_flags.generations;
        opt.crossover_prob = sweep_flags.crossover_prob;
        opt.mutation_prob = sweep_flags.mutation_prob;
        opt.weights = parse_weights(sweep_flags.weights);
        opt.constraints = parse_constraints(sweep_flags.constraints);
        opt.rule = parse_rule(sweep_flags.bandwidth_rule);
        opt.sigma_share = sweep_sigma;
        opt.nsga_generations = sweep_nsga_gens;
        bundle = exec_sweep(opt);
        out_dir = sweep_flags.out;
    } else if (oracle_cmd->parsed()) {
        oracle_opt.weights = parse_weights(oracle_weights);
        oracle_opt.constraints = parse_constraints(oracle_constraints);
        oracle_opt.rule = parse_rule(oracle_rule);
        bundle = exec_oracle(oracle_opt);
        out_dir = oracle_out;
    } else {
        std::cerr << app.help();
        return 2;
    }

    write_bundle(out_dir, bundle);
    std::cout << "wrote " << out_dir << " (" << bundle.files.size() << " files)\n";
    return 0;
}

}  // namespace
}  // namespace meshroute::cli

int main(int argc, char** argv) {
    try {
        return meshroute::cli::dispatch(argc, argv);
    } catch (const meshroute::ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const meshroute::NoRouteError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const meshroute::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const meshroute::SizeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
