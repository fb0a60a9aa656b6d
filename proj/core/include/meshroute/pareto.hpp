#pragma once

#include <cstddef>
#include <vector>

#include "meshroute/genetic.hpp"
#include "meshroute/qos.hpp"
#include "meshroute/topology.hpp"

namespace meshroute {

/// Objectives in minimization orientation: delay, 1/(1+bandwidth), hops.
using ObjectiveVector = std::vector<double>;

ObjectiveVector objective_vector(const QosVector& qos);

/// True iff `a` is no worse than `b` in every component and strictly better
/// in at least one.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Partitions indices into fronts: front 1 holds everything non-dominated,
/// front k holds whatever becomes non-dominated once fronts 1..k-1 are
/// removed.
std::vector<std::vector<std::size_t>> nondominated_sort(
    const std::vector<ObjectiveVector>& vectors);

/// Min-max rescale each dimension over the whole set to [0, 1]; dimensions
/// with no spread collapse to 0.
std::vector<ObjectiveVector> normalize_objectives(const std::vector<ObjectiveVector>& vectors);

struct NsgaParams {
    double sigma_share = 0.1;
    int population_size = 50;
    int generations = 1000;
    std::vector<int> checkpoints = {100, 200, 1000};
};

void validate(const NsgaParams& params);

/// Fitness sharing inside one front: each member's dummy fitness is divided
/// by its niche count against the other members of the same front.
std::vector<double> shared_fitness(const std::vector<std::size_t>& front,
                                   const std::vector<ObjectiveVector>& normalized,
                                   double dummy, const NsgaParams& params);

struct ArchiveEntry {
    Path path;
    QosVector qos;
    ObjectiveVector objectives;
};

/// Cumulative store of mutually non-dominated paths.
class ParetoArchive {
public:
    /// Ignores exact duplicates and anything dominated by a current entry;
    /// evicts entries the newcomer dominates.
    void insert(ArchiveEntry entry);

    const std::vector<ArchiveEntry>& entries() const { return entries_; }
    std::vector<ObjectiveVector> front() const;
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }

private:
    std::vector<ArchiveEntry> entries_;
};

struct FrontSnapshot {
    int generation = 0;
    /// Archive contents sorted by (delay, hops, path).
    std::vector<ArchiveEntry> entries;
};

struct NsgaResult {
    ParetoArchive archive;
    std::vector<FrontSnapshot> snapshots;
};

/// Multi-objective counterpart of evolve(): keeps the same variation
/// operators but selects parents by non-dominated rank with fitness sharing,
/// and accumulates every feasible evaluated path into an external archive.
NsgaResult nsga_evolve(const Topology& topology, const RouteQuery& query,
                       const GaConfig& config, const NsgaParams& params);

/// Exact dominated hypervolume against `reference`; every point must beat
/// the reference in all components.
double hypervolume(const std::vector<ObjectiveVector>& front,
                   const ObjectiveVector& reference);

struct SweepSample {
    Weights weights;
    Path path;
    QosVector qos;
    ObjectiveVector objectives;
    double cost = 0.0;
};

/// Runs evolve() once per weight triple: sample 0 uses config.weights, the
/// rest draw uniformly from the simplex. `jobs` > 1 runs samples
/// concurrently; results are merged in sample order either way.
std::vector<SweepSample> weighted_sum_sweep(const Topology& topology, const RouteQuery& query,
                                            const GaConfig& config, int n_samples,
                                            int jobs = 1);

}  // namespace meshroute
