#include "meshroute/qos.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "meshroute/errors.hpp"

namespace meshroute {

void validate(const Weights& w) {
    for (double a : {w.alpha1, w.alpha2, w.alpha3}) {
        if (!(a >= 0.0) || !(a <= 1.0)) {
            throw ParameterError("weights: each alpha must lie in [0, 1]");
        }
    }
    if (std::abs(w.alpha1 + w.alpha2 + w.alpha3 - 1.0) > kWeightSumTolerance) {
        throw ParameterError("weights: alpha1 + alpha2 + alpha3 must equal 1");
    }
}

void validate(const Constraints& c) {
    if (!(c.d_max_ms > 0.0) || !(c.b_min_mbps > 0.0) || c.hops_max <= 0) {
        throw ParameterError("constraints: bounds must be strictly positive");
    }
}

QosVector path_qos(const Topology& topology, const Path& path, BandwidthRule rule) {
    if (path.nodes.empty()) {
        throw ParameterError("path_qos: empty path");
    }
    std::unordered_set<NodeId> seen;
    for (NodeId id : path.nodes) {
        if (!topology.valid_id(id) || !seen.insert(id).second) {
            throw ParameterError("path_qos: path is not a simple path of valid nodes");
        }
    }
    for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i) {
        if (!topology.has_edge(path.nodes[i], path.nodes[i + 1])) {
            throw ParameterError("path_qos: path step is not a topology edge");
        }
    }

    QosVector q;
    q.hops = static_cast<int>(path.nodes.size()) - 1;
    bool first = true;
    for (NodeId id : path.nodes) {
        const NodeAttrs& n = topology.attrs(id);
        q.delay_ms += n.delay_ms;
        if (first) {
            q.bandwidth_mbps = n.bandwidth_mbps;
            first = false;
        } else if (rule == BandwidthRule::paper_literal_max) {
            q.bandwidth_mbps = std::max(q.bandwidth_mbps, n.bandwidth_mbps);
        } else {
            q.bandwidth_mbps = std::min(q.bandwidth_mbps, n.bandwidth_mbps);
        }
    }
    return q;
}

bool is_feasible(const QosVector& q, const Constraints& c) {
    return q.delay_ms <= c.d_max_ms && q.bandwidth_mbps >= c.b_min_mbps &&
           q.hops <= c.hops_max;
}

double bandwidth_transform(double bandwidth_mbps) {
    if (!(bandwidth_mbps > 0.0)) {
        throw ParameterError("bandwidth_transform: bandwidth must be > 0");
    }
    return 1.0 / (1.0 + bandwidth_mbps);
}

double weighted_sum_cost(const QosVector& q, const Weights& w, const Constraints& c,
                         double penalty) {
    validate(w);
    double cost = w.alpha1 * q.delay_ms + w.alpha2 * bandwidth_transform(q.bandwidth_mbps) +
                  w.alpha3 * static_cast<double>(q.hops);
    if (q.delay_ms > c.d_max_ms) {
        cost += penalty;
    }
    if (q.bandwidth_mbps < c.b_min_mbps) {
        cost += penalty;
    }
    if (q.hops > c.hops_max) {
        cost += penalty;
    }
    return cost;
}

double cost_to_fitness(double cost) {
    if (!(cost >= 0.0)) {
        throw ParameterError("cost_to_fitness: cost must be >= 0");
    }
    return 1.0 / (1.0 + cost);
}

}  // namespace meshroute
