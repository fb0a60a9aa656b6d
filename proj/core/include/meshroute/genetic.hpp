#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "meshroute/qos.hpp"
#include "meshroute/rng.hpp"
#include "meshroute/topology.hpp"

namespace meshroute {

/// The six parent-selection operators, in report-index order 1..6.
enum class SelectionMethod {
    rws = 0,  ///< roulette wheel, probability proportional to fitness
    ts,       ///< tournament, best of k uniform draws
    sss,      ///< steady-state style truncation: top fraction forms the pool
    bs,       ///< Boltzmann, probability ~ exp(fitness / T) with decaying T
    sigss,    ///< sigma scaling, expected value 1 + (f - mean)/(2 sigma)
    rs,       ///< linear ranking with selection pressure in (1, 2]
};

inline constexpr std::array<SelectionMethod, 6> kSelectionOrder = {
    SelectionMethod::rws, SelectionMethod::ts,    SelectionMethod::sss,
    SelectionMethod::bs,  SelectionMethod::sigss, SelectionMethod::rs,
};

std::string_view selection_method_name(SelectionMethod method);

/// Throws ParameterError on an unknown name.
SelectionMethod parse_selection_method(std::string_view name);

struct SelectionParams {
    int tournament_size = 2;
    double rank_pressure = 1.5;          // in (1, 2]
    double steady_state_fraction = 0.5;  // in (0, 1)
    double sigma_floor = 0.1;            // > 0
    double boltzmann_t0 = 10.0;          // > 0
    double boltzmann_decay = 0.95;       // in (0, 1)
};

void validate(const SelectionParams& params);

struct GaConfig {
    int population_size = 50;
    int generations = 100;
    double crossover_prob = 0.75;
    double mutation_prob = 0.01;
    Weights weights{};
    Constraints constraints{};
    BandwidthRule bandwidth_rule = BandwidthRule::paper_literal_max;
    std::uint64_t seed = 0;
    SelectionParams selection{};
};

void validate(const GaConfig& config);

/// A candidate route with its cached evaluation.
struct Chromosome {
    Path path;
    double cost = 0.0;
    QosVector qos{};
};

/// Priority-based genome: value = priority, position = node id (1-based).
struct PriorityChromosome {
    std::vector<int> priorities;
};

struct GenerationReport {
    int generation = 0;  // 1-based
    SelectionMethod chosen_method = SelectionMethod::rws;
    std::array<double, 6> method_best_cost{};  // indexed by kSelectionOrder
    double population_best_cost = 0.0;
    Path population_best_path;

    bool operator==(const GenerationReport&) const = default;
};

struct EvolveResult {
    Chromosome best;
    std::vector<GenerationReport> trace;
    double initial_best_cost = 0.0;  // best cost of the initial population
};

Chromosome evaluate_chromosome(const Topology& topology, Path path, const GaConfig& config);

/// population_size chromosomes, each a random simple source->destination
/// path from a randomized depth-first walk (uniform choice among unvisited
/// neighbors, backtracking on dead ends). Duplicates permitted.
/// Throws NoRouteError when source and destination are disconnected.
std::vector<Chromosome> initial_population(const Topology& topology, const RouteQuery& query,
                                           const GaConfig& config);

/// Greedy decode: from the source, repeatedly step to the unvisited neighbor
/// with the highest priority (ties to the smallest id). nullopt on a dead
/// end before the destination.
std::optional<Path> decode_priority(const Topology& topology, const RouteQuery& query,
                                    const PriorityChromosome& pc);

/// Draws two parent indices. Every method operates on the transformed
/// fitness 1/(1+cost), so lower cost means higher selection probability.
/// `generation` is 0-based and only feeds the Boltzmann temperature
/// schedule T = t0 * decay^generation.
std::pair<std::size_t, std::size_t> select_pair(const std::vector<Chromosome>& population,
                                                SelectionMethod method, int generation,
                                                const SelectionParams& params, RngStream& rng);

/// Single-point path crossover at a node common to both parents (source and
/// destination excluded). Children with loops are repaired by loop removal;
/// a child that still fails validation degrades to its parent. With no
/// common intermediate node the parents come back unchanged.
std::pair<Path, Path> crossover(const Topology& topology, const Path& parent1,
                                const Path& parent2, RngStream& rng);

/// Path mutation: pick a node i of the parent, a neighbor j of i, and
/// rebuild the route as shortest(s -> j) + shortest(j -> d) by hop-count
/// BFS. If the two halves share any node besides j the mutation is
/// cancelled and the parent comes back unchanged.
Path mutate(const Topology& topology, const RouteQuery& query, const Path& parent,
            RngStream& rng);

/// The adaptive GA: each generation builds six full candidate populations,
/// one per selection method, on independent deterministically-derived RNG
/// streams; the method whose candidate population attains the lowest best
/// cost wins (ties to the lowest report index) and its population is
/// adopted. The previous generation's best chromosome then replaces the
/// adopted population's worst. Deterministic for a fixed config.
EvolveResult evolve(const Topology& topology, const RouteQuery& query, const GaConfig& config);

}  // namespace meshroute
