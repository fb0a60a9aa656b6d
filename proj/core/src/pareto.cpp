#include "meshroute/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <set>
#include <utility>

#include "meshroute/errors.hpp"
#include "meshroute/rng.hpp"

namespace meshroute {

namespace {

constexpr std::uint64_t kNsgaSalt = 0x6e736761ULL;         // "nsga"
constexpr std::uint64_t kSweepWeightSalt = 0x73777765ULL;  // "swwe"
constexpr std::uint64_t kSweepRunSalt = 0x73777275ULL;     // "swru"

constexpr double kDummyDecay = 0.9;

bool snapshot_order(const ArchiveEntry& a, const ArchiveEntry& b) {
    if (a.qos.delay_ms != b.qos.delay_ms) {
        return a.qos.delay_ms < b.qos.delay_ms;
    }
    if (a.qos.hops != b.qos.hops) {
        return a.qos.hops < b.qos.hops;
    }
    return a.path.nodes < b.path.nodes;
}

}  // namespace

ObjectiveVector objective_vector(const QosVector& qos) {
    return {qos.delay_ms, bandwidth_transform(qos.bandwidth_mbps),
            static_cast<double>(qos.hops)};
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    if (a.size() != b.size() || a.empty()) {
        throw ParameterError("dominates: vectors must share a non-zero dimension");
    }
    bool strict = false;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] > b[j]) {
            return false;
        }
        if (a[j] < b[j]) {
            strict = true;
        }
    }
    return strict;
}

std::vector<std::vector<std::size_t>> nondominated_sort(
    const std::vector<ObjectiveVector>& vectors) {
    std::vector<std::vector<std::size_t>> fronts;
    std::vector<std::size_t> remaining(vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        remaining[i] = i;
    }
    while (!remaining.empty()) {
        std::vector<std::size_t> front;
        std::vector<std::size_t> rest;
        for (std::size_t i : remaining) {
            bool dominated = false;
            for (std::size_t j : remaining) {
                if (i != j && dominates(vectors[j], vectors[i])) {
                    dominated = true;
                    break;
                }
            }
            (dominated ? rest : front).push_back(i);
        }
        fronts.push_back(std::move(front));
        remaining = std::move(rest);
    }
    return fronts;
}

std::vector<ObjectiveVector> normalize_objectives(const std::vector<ObjectiveVector>& vectors) {
    if (vectors.empty()) {
        return {};
    }
    const std::size_t dims = vectors.front().size();
    std::vector<double> lo(dims, std::numeric_limits<double>::infinity());
    std::vector<double> hi(dims, -std::numeric_limits<double>::infinity());
    for (const auto& v : vectors) {
        if (v.size() != dims) {
            throw ParameterError("normalize_objectives: inconsistent dimensions");
        }
        for (std::size_t j = 0; j < dims; ++j) {
            lo[j] = std::min(lo[j], v[j]);
            hi[j] = std::max(hi[j], v[j]);
        }
    }
    std::vector<ObjectiveVector> out(vectors.size(), ObjectiveVector(dims, 0.0));
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        for (std::size_t j = 0; j < dims; ++j) {
            if (hi[j] > lo[j]) {
                out[i][j] = (vectors[i][j] - lo[j]) / (hi[j] - lo[j]);
            }
        }
    }
    return out;
}

void validate(const NsgaParams& params) {
    if (!(params.sigma_share > 0.0)) {
        throw ParameterError("nsga params: sigma_share must be > 0");
    }
    if (params.population_size < 2) {
        throw ParameterError("nsga params: population_size must be >= 2");
    }
    if (params.generations < 1) {
        throw ParameterError("nsga params: generations must be >= 1");
    }
    for (int c : params.checkpoints) {
        if (c < 1) {
            throw ParameterError("nsga params: checkpoints must be >= 1");
        }
    }
}

std::vector<double> shared_fitness(const std::vector<std::size_t>& front,
                                   const std::vector<ObjectiveVector>& normalized,
                                   double dummy, const NsgaParams& params) {
    if (front.empty()) {
        throw ParameterError("shared_fitness: empty front");
    }
    validate(params);
    std::vector<double> out(front.size());
    for (std::size_t a = 0; a < front.size(); ++a) {
        double niche = 0.0;
        for (std::size_t b = 0; b < front.size(); ++b) {
            const auto& va = normalized[front[a]];
            const auto& vb = normalized[front[b]];
            double dist2 = 0.0;
            for (std::size_t j = 0; j < va.size(); ++j) {
                dist2 += (va[j] - vb[j]) * (va[j] - vb[j]);
            }
            const double ratio2 = dist2 / (params.sigma_share * params.sigma_share);
            niche += std::max(0.0, 1.0 - ratio2);
        }
        out[a] = dummy / niche;
    }
    return out;
}

void ParetoArchive::insert(ArchiveEntry entry) {
    for (const ArchiveEntry& held : entries_) {
        if (held.path == entry.path) {
            return;
        }
        if (dominates(held.objectives, entry.objectives)) {
            return;
        }
    }
    std::erase_if(entries_, [&](const ArchiveEntry& held) {
        return dominates(entry.objectives, held.objectives);
    });
    entries_.push_back(std::move(entry));
}

std::vector<ObjectiveVector> ParetoArchive::front() const {
    std::vector<ObjectiveVector> out;
    out.reserve(entries_.size());
    for (const ArchiveEntry& entry : entries_) {
        out.push_back(entry.objectives);
    }
    return out;
}

NsgaResult nsga_evolve(const Topology& topology, const RouteQuery& query,
                       const GaConfig& config, const NsgaParams& params) {
    validate(params);
    GaConfig inner = config;
    inner.population_size = params.population_size;
    inner.generations = params.generations;
    validate(inner);

    NsgaResult result;
    auto absorb = [&](const Chromosome& c) {
        if (is_feasible(c.qos, inner.constraints)) {
            result.archive.insert({c.path, c.qos, objective_vector(c.qos)});
        }
    };

    auto population = initial_population(topology, query, inner);
    for (const Chromosome& c : population) {
        absorb(c);
    }

    const std::set<int> checkpoints(params.checkpoints.begin(), params.checkpoints.end());
    const std::size_t pop_size = population.size();

    for (int gen = 0; gen < inner.generations; ++gen) {
        RngStream rng(derive_seed(inner.seed, kNsgaSalt, gen));

        std::vector<ObjectiveVector> objectives;
        objectives.reserve(pop_size);
        std::vector<std::size_t> feasible;
        std::vector<std::size_t> infeasible;
        for (std::size_t i = 0; i < pop_size; ++i) {
            objectives.push_back(objective_vector(population[i].qos));
            (is_feasible(population[i].qos, inner.constraints) ? feasible : infeasible)
                .push_back(i);
        }

        // Feasible members always outrank infeasible ones; each group is
        // front-sorted among itself.
        std::vector<std::vector<std::size_t>> fronts;
        auto append_group = [&](const std::vector<std::size_t>& group) {
            if (group.empty()) {
                return;
            }
            std::vector<ObjectiveVector> subset;
            subset.reserve(group.size());
            for (std::size_t i : group) {
                subset.push_back(objectives[i]);
            }
            for (const auto& local : nondominated_sort(subset)) {
                std::vector<std::size_t> front;
                front.reserve(local.size());
                for (std::size_t k : local) {
                    front.push_back(group[k]);
                }
                fronts.push_back(std::move(front));
            }
        };
        append_group(feasible);
        append_group(infeasible);

        const auto normalized = normalize_objectives(objectives);
        std::vector<double> selection_weight(pop_size, 0.0);
        double dummy = static_cast<double>(params.population_size);
        for (const auto& front : fronts) {
            const auto shared = shared_fitness(front, normalized, dummy, params);
            for (std::size_t k = 0; k < front.size(); ++k) {
                selection_weight[front[k]] = shared[k];
            }
            dummy = kDummyDecay * *std::min_element(shared.begin(), shared.end());
        }

        std::vector<Chromosome> next;
        next.reserve(pop_size);
        while (next.size() < pop_size) {
            const std::size_t a = spin_roulette(selection_weight, rng);
            const std::size_t b = spin_roulette(selection_weight, rng);
            Path first = population[a].path;
            Path second = population[b].path;
            if (rng.bernoulli(inner.crossover_prob)) {
                std::tie(first, second) = crossover(topology, first, second, rng);
            }
            if (rng.bernoulli(inner.mutation_prob)) {
                first = mutate(topology, query, first, rng);
            }
            if (rng.bernoulli(inner.mutation_prob)) {
                second = mutate(topology, query, second, rng);
            }
            next.push_back(evaluate_chromosome(topology, std::move(first), inner));
            if (next.size() < pop_size) {
                next.push_back(evaluate_chromosome(topology, std::move(second), inner));
            }
        }
        population = std::move(next);
        for (const Chromosome& c : population) {
            absorb(c);
        }

        if (checkpoints.count(gen + 1)) {
            FrontSnapshot snapshot;
            snapshot.generation = gen + 1;
            snapshot.entries = result.archive.entries();
            std::sort(snapshot.entries.begin(), snapshot.entries.end(), snapshot_order);
            result.snapshots.push_back(std::move(snapshot));
        }
    }
    return result;
}

namespace {

double hypervolume_slice(std::vector<ObjectiveVector> points, const ObjectiveVector& reference,
                         std::size_t dims) {
    if (points.empty()) {
        return 0.0;
    }
    if (dims == 1) {
        double lo = points.front()[0];
        for (const auto& p : points) {
            lo = std::min(lo, p[0]);
        }
        return reference[0] - lo;
    }
    // Slice along the last dimension: each slab spans from one point's
    // coordinate to the next, and its cross-section is the (dims-1)-volume
    // of everything at or below the slab.
    const std::size_t axis = dims - 1;
    std::sort(points.begin(), points.end(),
              [axis](const ObjectiveVector& a, const ObjectiveVector& b) {
                  return a[axis] < b[axis];
              });
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double top =
            (i + 1 < points.size()) ? points[i + 1][axis] : reference[axis];
        const double thickness = top - points[i][axis];
        if (thickness <= 0.0) {
            continue;
        }
        std::vector<ObjectiveVector> slab(points.begin(), points.begin() + i + 1);
        total += thickness * hypervolume_slice(std::move(slab), reference, dims - 1);
    }
    return total;
}

}  // namespace

double hypervolume(const std::vector<ObjectiveVector>& front,
                   const ObjectiveVector& reference) {
    if (reference.empty()) {
        throw ParameterError("hypervolume: empty reference point");
    }
    if (front.empty()) {
        return 0.0;
    }
    for (const auto& v : front) {
        if (v.size() != reference.size()) {
            throw ParameterError("hypervolume: dimension mismatch with reference");
        }
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (!(v[j] < reference[j])) {
                throw ParameterError("hypervolume: every point must dominate the reference");
            }
        }
    }
    return hypervolume_slice(front, reference, reference.size());
}

std::vector<SweepSample> weighted_sum_sweep(const Topology& topology, const RouteQuery& query,
                                            const GaConfig& config, int n_samples, int jobs) {
    validate(config);
    if (n_samples < 1) {
        throw ParameterError("weighted_sum_sweep: n_samples must be >= 1");
    }
    if (jobs < 1) {
        throw ParameterError("weighted_sum_sweep: jobs must be >= 1");
    }

    // Weight triples are drawn up front so the sweep is deterministic no
    // matter how samples are scheduled.
    std::vector<Weights> triples;
    triples.reserve(n_samples);
    triples.push_back(config.weights);
    RngStream weight_rng(derive_seed(config.seed, kSweepWeightSalt));
    for (int i = 1; i < n_samples; ++i) {
        double a = weight_rng.uniform01();
        double b = weight_rng.uniform01();
        if (a > b) {
            std::swap(a, b);
        }
        triples.push_back({a, b - a, 1.0 - b});
    }

    // Sample 0 reruns the configured weights on the base seed verbatim, so it
    // reproduces a plain evolve() of the same config exactly.
    auto run_sample = [&](int i) {
        GaConfig local = config;
        local.weights = triples[i];
        local.seed = i == 0 ? config.seed
                            : derive_seed(config.seed, kSweepRunSalt,
                                          static_cast<std::uint64_t>(i));
        const EvolveResult evolved = evolve(topology, query, local);
        SweepSample sample;
        sample.weights = triples[i];
        sample.path = evolved.best.path;
        sample.qos = evolved.best.qos;
        sample.objectives = objective_vector(evolved.best.qos);
        sample.cost = evolved.best.cost;
        return sample;
    };

    std::vector<SweepSample> out(n_samples);
    if (jobs == 1) {
        for (int i = 0; i < n_samples; ++i) {
            out[i] = run_sample(i);
        }
        return out;
    }
    int next = 0;
    while (next < n_samples) {
        const int batch = std::min(jobs, n_samples - next);
        std::vector<std::future<SweepSample>> inflight;
        inflight.reserve(batch);
        for (int k = 0; k < batch; ++k) {
            inflight.push_back(
                std::async(std::launch::async, run_sample, next + k));
        }
        for (int k = 0; k < batch; ++k) {
            out[next + k] = inflight[k].get();
        }
        next += batch;
    }
    return out;
}

}  // namespace meshroute
