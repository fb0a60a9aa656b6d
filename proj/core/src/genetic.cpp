#include "meshroute/genetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "meshroute/errors.hpp"

namespace meshroute {

namespace {

constexpr std::uint64_t kInitSalt = 0x696e6974ULL;    // "init"
constexpr std::uint64_t kMethodSalt = 0x6d657468ULL;  // "meth"

std::vector<double> fitness_of(const std::vector<Chromosome>& population) {
    std::vector<double> fitness(population.size());
    for (std::size_t i = 0; i < population.size(); ++i) {
        fitness[i] = cost_to_fitness(population[i].cost);
    }
    return fitness;
}

/// Indices sorted best-first (ascending cost, ties to the lower index).
std::vector<std::size_t> rank_by_cost(const std::vector<Chromosome>& population) {
    std::vector<std::size_t> order(population.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return population[a].cost < population[b].cost;
    });
    return order;
}

std::size_t draw_rws(const std::vector<double>& fitness, RngStream& rng) {
    return spin_roulette(fitness, rng);
}

std::size_t draw_tournament(const std::vector<Chromosome>& population, int size,
                            RngStream& rng) {
    std::size_t best = rng.uniform_index(population.size());
    for (int k = 1; k < size; ++k) {
        const std::size_t challenger = rng.uniform_index(population.size());
        if (population[challenger].cost < population[best].cost) {
            best = challenger;
        }
    }
    return best;
}

std::size_t draw_rank(const std::vector<Chromosome>& population, double pressure,
                      RngStream& rng) {
    const std::size_t n = population.size();
    if (n == 1) {
        return 0;
    }
    // Linear ranking: rank 0 = worst, n-1 = best; weight 2-sp + 2r(sp-1)/(n-1).
    const auto order = rank_by_cost(population);
    std::vector<double> weights(n, 0.0);
    for (std::size_t pos = 0; pos < n; ++pos) {
        const std::size_t rank = n - 1 - pos;  // order is best-first
        weights[order[pos]] =
            (2.0 - pressure) +
            2.0 * static_cast<double>(rank) * (pressure - 1.0) / static_cast<double>(n - 1);
    }
    return spin_roulette(weights, rng);
}

std::size_t draw_steady_state(const std::vector<Chromosome>& population, double fraction,
                              RngStream& rng) {
    const auto order = rank_by_cost(population);
    const auto pool = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(fraction * static_cast<double>(order.size()))));
    return order[rng.uniform_index(pool)];
}

std::size_t draw_sigma_scaled(const std::vector<double>& fitness, double floor,
                              RngStream& rng) {
    const auto n = static_cast<double>(fitness.size());
    const double mean = std::accumulate(fitness.begin(), fitness.end(), 0.0) / n;
    double variance = 0.0;
    for (double f : fitness) {
        variance += (f - mean) * (f - mean);
    }
    const double sigma = std::sqrt(variance / n);

    std::vector<double> weights(fitness.size(), 1.0);
    if (sigma > 0.0) {
        for (std::size_t i = 0; i < fitness.size(); ++i) {
            weights[i] = std::max(floor, 1.0 + (fitness[i] - mean) / (2.0 * sigma));
        }
    }
    return spin_roulette(weights, rng);
}

std::size_t draw_boltzmann(const std::vector<double>& fitness, int generation,
                           const SelectionParams& params, RngStream& rng) {
    const double temperature =
        params.boltzmann_t0 * std::pow(params.boltzmann_decay, generation);
    // exp shifted by the max exponent; the shift cancels in the normalized
    // probabilities and keeps low temperatures from overflowing.
    const double top = *std::max_element(fitness.begin(), fitness.end());
    std::vector<double> weights(fitness.size());
    for (std::size_t i = 0; i < fitness.size(); ++i) {
        weights[i] = std::exp((fitness[i] - top) / temperature);
    }
    return spin_roulette(weights, rng);
}

std::size_t draw_parent(const std::vector<Chromosome>& population,
                        const std::vector<double>& fitness, SelectionMethod method,
                        int generation, const SelectionParams& params, RngStream& rng) {
    switch (method) {
        case SelectionMethod::rws:
            return draw_rws(fitness, rng);
        case SelectionMethod::ts:
            return draw_tournament(population, params.tournament_size, rng);
        case SelectionMethod::sss:
            return draw_steady_state(population, params.steady_state_fraction, rng);
        case SelectionMethod::bs:
            return draw_boltzmann(fitness, generation, params, rng);
        case SelectionMethod::sigss:
            return draw_sigma_scaled(fitness, params.sigma_floor, rng);
        case SelectionMethod::rs:
            return draw_rank(population, params.rank_pressure, rng);
    }
    throw ParameterError("select_pair: unknown selection method");
}

/// Removes loops by truncating back to the first occurrence of a repeated
/// node. Every output adjacency already occurred in the input, so edge
/// validity survives the repair.
Path remove_loops(const Path& path) {
    Path out;
    out.nodes.reserve(path.nodes.size());
    for (NodeId id : path.nodes) {
        const auto it = std::find(out.nodes.begin(), out.nodes.end(), id);
        if (it != out.nodes.end()) {
            out.nodes.erase(it + 1, out.nodes.end());
        } else {
            out.nodes.push_back(id);
        }
    }
    return out;
}

std::size_t best_index(const std::vector<Chromosome>& population) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < population.size(); ++i) {
        if (population[i].cost < population[best].cost) {
            best = i;
        }
    }
    return best;
}

std::size_t worst_index(const std::vector<Chromosome>& population) {
    std::size_t worst = 0;
    for (std::size_t i = 1; i < population.size(); ++i) {
        if (population[i].cost > population[worst].cost) {
            worst = i;
        }
    }
    return worst;
}

}  // namespace

std::string_view selection_method_name(SelectionMethod method) {
    switch (method) {
        case SelectionMethod::rws:
            return "RWS";
        case SelectionMethod::ts:
            return "TS";
        case SelectionMethod::sss:
            return "SSS";
        case SelectionMethod::bs:
            return "BS";
        case SelectionMethod::sigss:
            return "SigSS";
        case SelectionMethod::rs:
            return "RS";
    }
    throw ParameterError("selection_method_name: unknown selection method");
}

SelectionMethod parse_selection_method(std::string_view name) {
    for (SelectionMethod method : kSelectionOrder) {
        if (name == selection_method_name(method)) {
            return method;
        }
    }
    throw ParameterError("unknown selection method name '" + std::string(name) + "'");
}

void validate(const SelectionParams& p) {
    if (p.tournament_size < 1) {
        throw ParameterError("selection params: tournament_size must be >= 1");
    }
    if (!(p.rank_pressure > 1.0) || !(p.rank_pressure <= 2.0)) {
        throw ParameterError("selection params: rank_pressure must lie in (1, 2]");
    }
    if (!(p.steady_state_fraction > 0.0) || !(p.steady_state_fraction < 1.0)) {
        throw ParameterError("selection params: steady_state_fraction must lie in (0, 1)");
    }
    if (!(p.sigma_floor > 0.0)) {
        throw ParameterError("selection params: sigma_floor must be > 0");
    }
    if (!(p.boltzmann_t0 > 0.0)) {
        throw ParameterError("selection params: boltzmann_t0 must be > 0");
    }
    if (!(p.boltzmann_decay > 0.0) || !(p.boltzmann_decay < 1.0)) {
        throw ParameterError("selection params: boltzmann_decay must lie in (0, 1)");
    }
}

void validate(const GaConfig& c) {
    if (c.population_size < 2) {
        throw ParameterError("ga config: population_size must be >= 2");
    }
    if (c.generations < 1) {
        throw ParameterError("ga config: generations must be >= 1");
    }
    if (!(c.crossover_prob >= 0.0) || !(c.crossover_prob <= 1.0)) {
        throw ParameterError("ga config: crossover_prob must lie in [0, 1]");
    }
    if (!(c.mutation_prob >= 0.0) || !(c.mutation_prob <= 1.0)) {
        throw ParameterError("ga config: mutation_prob must lie in [0, 1]");
    }
    validate(c.weights);
    validate(c.constraints);
    validate(c.selection);
}

Chromosome evaluate_chromosome(const Topology& topology, Path path, const GaConfig& config) {
    Chromosome chromosome;
    chromosome.qos = path_qos(topology, path, config.bandwidth_rule);
    chromosome.cost = weighted_sum_cost(chromosome.qos, config.weights, config.constraints);
    chromosome.path = std::move(path);
    return chromosome;
}

std::vector<Chromosome> initial_population(const Topology& topology, const RouteQuery& query,
                                           const GaConfig& config) {
    validate(config);
    if (!topology.valid_id(query.source) || !topology.valid_id(query.destination) ||
        query.source == query.destination) {
        throw ParameterError("initial_population: invalid route query");
    }
    if (!route_exists(topology, query)) {
        throw NoRouteError("initial_population: source and destination are disconnected");
    }

    RngStream rng(derive_seed(config.seed, kInitSalt));
    std::vector<Chromosome> population;
    population.reserve(config.population_size);
    for (int i = 0; i < config.population_size; ++i) {
        // Randomized DFS: visited marks are permanent across backtracking,
        // so the walk always terminates and reaches any connected target.
        std::vector<char> visited(topology.node_count() + 1, 0);
        std::vector<std::pair<NodeId, std::vector<NodeId>>> stack;
        auto frontier_of = [&](NodeId at) {
            std::vector<NodeId> next;
            for (NodeId n : topology.neighbors(at)) {
                if (!visited[n]) {
                    next.push_back(n);
                }
            }
            rng.shuffle(next);
            return next;
        };
        visited[query.source] = 1;
        stack.emplace_back(query.source, frontier_of(query.source));
        while (!stack.empty() && stack.back().first != query.destination) {
            auto& [at, untried] = stack.back();
            while (!untried.empty() && visited[untried.back()]) {
                untried.pop_back();
            }
            if (untried.empty()) {
                stack.pop_back();
                continue;
            }
            const NodeId next = untried.back();
            untried.pop_back();
            visited[next] = 1;
            stack.emplace_back(next, next == query.destination ? std::vector<NodeId>{}
                                                               : frontier_of(next));
        }
        if (stack.empty()) {
            throw NoRouteError("initial_population: walk failed to reach the destination");
        }
        Path path;
        path.nodes.reserve(stack.size());
        for (const auto& [id, _] : stack) {
            path.nodes.push_back(id);
        }
        population.push_back(evaluate_chromosome(topology, std::move(path), config));
    }
    return population;
}

std::optional<Path> decode_priority(const Topology& topology, const RouteQuery& query,
                                    const PriorityChromosome& pc) {
    if (pc.priorities.size() != topology.node_count()) {
        throw ParameterError("decode_priority: one priority per node required");
    }
    for (int p : pc.priorities) {
        if (p < 1) {
            throw ParameterError("decode_priority: priorities must be >= 1");
        }
    }
    if (!topology.valid_id(query.source) || !topology.valid_id(query.destination) ||
        query.source == query.destination) {
        throw ParameterError("decode_priority: invalid route query");
    }

    std::vector<char> visited(topology.node_count() + 1, 0);
    Path path{{query.source}};
    visited[query.source] = 1;
    NodeId at = query.source;
    while (at != query.destination) {
        NodeId next = 0;
        int best_priority = 0;
        for (NodeId n : topology.neighbors(at)) {  // ascending ids: ties keep the smaller
            if (visited[n]) {
                continue;
            }
            const int priority = pc.priorities[n - 1];
            if (priority > best_priority) {
                best_priority = priority;
                next = n;
            }
        }
        if (next == 0) {
            return std::nullopt;  // dead end
        }
        visited[next] = 1;
        path.nodes.push_back(next);
        at = next;
    }
    return path;
}

std::pair<std::size_t, std::size_t> select_pair(const std::vector<Chromosome>& population,
                                                SelectionMethod method, int generation,
                                                const SelectionParams& params,
                                                RngStream& rng) {
    if (population.empty()) {
        throw ParameterError("select_pair: empty population");
    }
    validate(params);
    const auto fitness = fitness_of(population);
    const std::size_t first = draw_parent(population, fitness, method, generation, params, rng);
    const std::size_t second = draw_parent(population, fitness, method, generation, params, rng);
    return {first, second};
}

std::pair<Path, Path> crossover(const Topology& topology, const Path& parent1,
                                const Path& parent2, RngStream& rng) {
    if (parent1.nodes.size() < 2 || parent2.nodes.size() < 2 ||
        parent1.nodes.front() != parent2.nodes.front() ||
        parent1.nodes.back() != parent2.nodes.back()) {
        throw ParameterError("crossover: parents must share source and destination");
    }

    // Common intermediate nodes, ascending for a deterministic draw.
    std::unordered_set<NodeId> mid1(parent1.nodes.begin() + 1, parent1.nodes.end() - 1);
    std::vector<NodeId> common;
    for (std::size_t i = 1; i + 1 < parent2.nodes.size(); ++i) {
        if (mid1.count(parent2.nodes[i])) {
            common.push_back(parent2.nodes[i]);
        }
    }
    std::sort(common.begin(), common.end());
    if (common.empty()) {
        return {parent1, parent2};
    }

    const NodeId cross = common[rng.uniform_index(common.size())];
    const auto at1 = std::find(parent1.nodes.begin(), parent1.nodes.end(), cross);
    const auto at2 = std::find(parent2.nodes.begin(), parent2.nodes.end(), cross);

    Path child1{{parent1.nodes.begin(), at1 + 1}};
    child1.nodes.insert(child1.nodes.end(), at2 + 1, parent2.nodes.end());
    Path child2{{parent2.nodes.begin(), at2 + 1}};
    child2.nodes.insert(child2.nodes.end(), at1 + 1, parent1.nodes.end());

    const RouteQuery query{parent1.nodes.front(), parent1.nodes.back()};
    child1 = remove_loops(child1);
    child2 = remove_loops(child2);
    if (!validate_path(topology, query, child1)) {
        child1 = parent1;
    }
    if (!validate_path(topology, query, child2)) {
        child2 = parent2;
    }
    return {std::move(child1), std::move(child2)};
}

Path mutate(const Topology& topology, const RouteQuery& query, const Path& parent,
            RngStream& rng) {
    if (parent.nodes.empty()) {
        throw ParameterError("mutate: empty parent path");
    }
    const NodeId site = parent.nodes[rng.uniform_index(parent.nodes.size())];
    const auto& around = topology.neighbors(site);
    if (around.empty()) {
        return parent;
    }
    const NodeId junction = around[rng.uniform_index(around.size())];

    const auto head = bfs_hop_path(topology, query.source, junction);
    const auto tail = bfs_hop_path(topology, junction, query.destination);
    if (!head || !tail) {
        return parent;
    }
    // Replication between the halves (any shared node besides the junction)
    // cancels the mutation.
    std::unordered_set<NodeId> in_head(head->nodes.begin(), head->nodes.end());
    for (NodeId id : tail->nodes) {
        if (id != junction && in_head.count(id)) {
            return parent;
        }
    }
    Path joined = *head;
    joined.nodes.insert(joined.nodes.end(), tail->nodes.begin() + 1, tail->nodes.end());
    return joined;
}

EvolveResult evolve(const Topology& topology, const RouteQuery& query, const GaConfig& config) {
    auto population = initial_population(topology, query, config);
    const std::size_t pop_size = population.size();

    EvolveResult result;
    result.initial_best_cost = population[best_index(population)].cost;
    result.trace.reserve(config.generations);

    for (int gen = 0; gen < config.generations; ++gen) {
        std::vector<std::vector<Chromosome>> candidates(kSelectionOrder.size());
        std::array<double, 6> method_best{};
        for (std::size_t m = 0; m < kSelectionOrder.size(); ++m) {
            RngStream rng(derive_seed(config.seed, kMethodSalt, gen, m));
            auto& offspring = candidates[m];
            offspring.reserve(pop_size);
            while (offspring.size() < pop_size) {
                const auto [a, b] =
                    select_pair(population, kSelectionOrder[m], gen, config.selection, rng);
                Path first = population[a].path;
                Path second = population[b].path;
                if (rng.bernoulli(config.crossover_prob)) {
                    std::tie(first, second) = crossover(topology, first, second, rng);
                }
                if (rng.bernoulli(config.mutation_prob)) {
                    first = mutate(topology, query, first, rng);
                }
                if (rng.bernoulli(config.mutation_prob)) {
                    second = mutate(topology, query, second, rng);
                }
                offspring.push_back(evaluate_chromosome(topology, std::move(first), config));
                if (offspring.size() < pop_size) {
                    offspring.push_back(evaluate_chromosome(topology, std::move(second), config));
                }
            }
            method_best[m] = offspring[best_index(offspring)].cost;
        }

        std::size_t winner = 0;
        for (std::size_t m = 1; m < method_best.size(); ++m) {
            if (method_best[m] < method_best[winner]) {
                winner = m;
            }
        }

        // Elitism: the previous generation's best replaces the adopted
        // population's worst.
        const Chromosome elite = population[best_index(population)];
        population = std::move(candidates[winner]);
        population[worst_index(population)] = elite;

        for (const Chromosome& c : population) {
            if (!validate_path(topology, query, c.path)) {
                throw std::logic_error("evolve: population contains an invalid path");
            }
        }

        const Chromosome& best = population[best_index(population)];
        GenerationReport report;
        report.generation = gen + 1;
        report.chosen_method = kSelectionOrder[winner];
        report.method_best_cost = method_best;
        report.population_best_cost = best.cost;
        report.population_best_path = best.path;
        result.trace.push_back(std::move(report));
    }

    result.best = population[best_index(population)];
    return result;
}

}  // namespace meshroute
