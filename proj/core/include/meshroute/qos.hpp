#pragma once

#include "meshroute/topology.hpp"

namespace meshroute {

/// Path QoS triple. Delay and hops are minimized, bandwidth is maximized
/// (it enters the scalar objective through the 1/(1+B) transform).
struct QosVector {
    double delay_ms = 0.0;
    double bandwidth_mbps = 0.0;
    int hops = 0;

    bool operator==(const QosVector&) const = default;
};

/// Convex objective weights (delay, bandwidth, hops). Defaults are the
/// reference configuration alpha = (0.5, 0.15, 0.35).
struct Weights {
    double alpha1 = 0.5;
    double alpha2 = 0.15;
    double alpha3 = 0.35;
};

inline constexpr double kWeightSumTolerance = 1e-9;

/// Throws ParameterError unless each weight lies in [0, 1] and the three
/// sum to 1 within kWeightSumTolerance.
void validate(const Weights& weights);

/// Feasibility bounds: delay <= d_max, bandwidth >= b_min, hops <= hops_max,
/// all inclusive.
struct Constraints {
    double d_max_ms = 50.0;
    double b_min_mbps = 1.0;
    int hops_max = 10;
};

void validate(const Constraints& constraints);

/// How a path aggregates node bandwidths: the literal maximum over the
/// path's nodes, or the conventional bottleneck minimum.
enum class BandwidthRule {
    paper_literal_max,
    bottleneck_min,
};

/// Additive cost per violated constraint. Large enough that an infeasible
/// path never outranks a feasible one at the attribute scales in use, while
/// infeasible paths still order among themselves by violation count.
inline constexpr double kConstraintPenalty = 1e6;

/// Delay = sum of node delays over the whole path (both endpoints count),
/// bandwidth per the rule, hops = node count - 1.
QosVector path_qos(const Topology& topology, const Path& path, BandwidthRule rule);

bool is_feasible(const QosVector& q, const Constraints& c);

/// 1/(1+b): maps bandwidth (maximized) into a minimized term in (0, 1).
double bandwidth_transform(double bandwidth_mbps);

/// F = a1*delay + a2/(1+bandwidth) + a3*hops, plus `penalty` for each
/// violated constraint. Objectives combine unnormalized.
double weighted_sum_cost(const QosVector& q, const Weights& w, const Constraints& c,
                         double penalty = kConstraintPenalty);

/// 1/(1+f): turns a minimized cost into a maximized fitness in (0, 1].
double cost_to_fitness(double cost);

}  // namespace meshroute
