#include "hpga/engine.hpp"

#include "text.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace hpga {

double fitness(const Graph& g, const Partition& p, const Constraints& c, double penalty) {
    double excess = 0.0;
    if (c.max_cluster_size) {
        for (auto s : p.cluster_sizes()) {
            if (s > *c.max_cluster_size) excess += static_cast<double>(s - *c.max_cluster_size);
        }
    }
    if (c.max_clusters && p.k > *c.max_clusters) excess += static_cast<double>(p.k - *c.max_clusters);
    const double cut = cut_weight(g, p);
    return excess == 0.0 ? cut : cut + penalty * excess;
}

Individual evaluate(const Codec& codec, Chromosome chromosome, const Objective& objective) {
    Individual ind{std::move(chromosome), {}, 0.0};
    ind.partition = codec.decode(ind.chromosome);
    ind.fitness = objective(ind.partition);
    return ind;
}

void sort_population(std::vector<Individual>& population) {
    std::stable_sort(population.begin(), population.end(),
                     [](const Individual& a, const Individual& b) { return a.fitness < b.fitness; });
}

Island make_island(std::size_t id, const Codec& codec, std::size_t size, const Objective& objective,
                   double mutation_rate, std::uint64_t master_seed) {
    Island island{id, codec, {}, 0.0, mutation_rate, Rng(master_seed, id), 0};
    island.population.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
        island.population.push_back(evaluate(codec, codec.random(island.rng), objective));
    }
    sort_population(island.population);
    return island;
}

// --- generational step ----------------------------------------------------------

namespace {

const Individual& tournament(const std::vector<Individual>& pop, std::size_t size, Rng& rng) {
    const Individual* best = &pop[rng.below(pop.size())];
    for (std::size_t i = 1; i < size; ++i) {
        const auto& challenger = pop[rng.below(pop.size())];
        if (challenger.fitness < best->fitness) best = &challenger;
    }
    return *best;
}

}  // namespace

void step_generation(Island& island, const Objective& objective, const GaParams& params) {
    auto& pop = island.population;
    if (pop.empty()) throw std::invalid_argument("cannot step an empty population");
    const auto size = pop.size();
    const auto elite = std::min(params.elitism, size);

    std::vector<Individual> next(pop.begin(), pop.begin() + static_cast<std::ptrdiff_t>(elite));
    next.reserve(size);
    auto& rng = island.rng;
    while (next.size() < size) {
        const auto& a = tournament(pop, params.tournament_size, rng);
        const auto& b = tournament(pop, params.tournament_size, rng);
        Chromosome x = a.chromosome;
        Chromosome y = b.chromosome;
        if (rng.bernoulli(params.crossover_probability)) {
            std::tie(x, y) = island.codec.crossover(a.chromosome, b.chromosome, rng);
        }
        next.push_back(evaluate(island.codec, island.codec.mutate(x, params.mutation_rate, rng), objective));
        if (next.size() < size) {
            next.push_back(evaluate(island.codec, island.codec.mutate(y, params.mutation_rate, rng), objective));
        }
    }
    sort_population(next);
    pop = std::move(next);
}

// --- migration ------------------------------------------------------------------

Chromosome translate(const Partition& p, const Codec& destination) {
    return destination.encode(p);
}

Topology Topology::complete(const std::vector<EncodingScheme>& schemes) {
    Topology t;
    for (std::size_t src = 0; src < schemes.size(); ++src) {
        for (std::size_t dst = 0; dst < schemes.size(); ++dst) {
            if (src == dst) continue;
            t.links.push_back({src, dst, schemes[dst].kind == SchemeKind::pmedian ? 2u : 1u});
        }
    }
    return t;
}

void Topology::validate(std::size_t island_count) const {
    for (const auto& l : links) {
        if (l.src >= island_count || l.dst >= island_count) {
            throw std::invalid_argument("topology link " + std::to_string(l.src) + " -> " + std::to_string(l.dst) +
                                        " references an undefined island");
        }
        if (l.src == l.dst) throw std::invalid_argument("topology self-link on island " + std::to_string(l.src));
        if (l.count == 0) throw std::invalid_argument("topology migrant count must be at least 1");
    }
}

namespace {

// Best-first individuals with pairwise distinct phenotypes.
std::vector<Partition> emigrants(const Island& island, std::size_t count) {
    std::vector<Partition> out;
    for (const auto& ind : island.population) {
        if (out.size() == count) break;
        if (std::find(out.begin(), out.end(), ind.partition) == out.end()) out.push_back(ind.partition);
    }
    return out;
}

void accept_migrant(Island& island, Individual migrant) {
    auto& pop = island.population;
    if (pop.size() == 1 && migrant.fitness > pop.front().fitness) return;
    pop.back() = std::move(migrant);
    sort_population(pop);
}

}  // namespace

void migrate(std::vector<Island>& islands, const Topology& topology, const Objective& objective) {
    for (const auto& link : topology.links) {
        auto& dst = islands.at(link.dst);
        for (const auto& p : emigrants(islands.at(link.src), link.count)) {
            Chromosome c;
            try {
                c = translate(p, dst.codec);
            } catch (const CapacityExceeded&) {
                ++dst.migration_failures;
                continue;
            }
            accept_migrant(dst, evaluate(dst.codec, std::move(c), objective));
        }
    }
}

// --- scoring and sizing -------------------------------------------------------

void update_scores(std::vector<Island>& islands, const std::vector<std::size_t>& improvements, double alpha) {
    if (improvements.size() != islands.size()) throw std::invalid_argument("one improvement count per island");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("smoothing must lie in [0, 1]");
    for (std::size_t i = 0; i < islands.size(); ++i) {
        islands[i].score = alpha * islands[i].score + (1.0 - alpha) * static_cast<double>(improvements[i]);
    }
}

std::vector<std::size_t> hostile_targets(const std::vector<double>& scores, std::size_t total, std::size_t floor) {
    const auto count = scores.size();
    if (count == 0) return {};
    if (floor * count > total) throw std::invalid_argument("floor times island count exceeds total population");
    const auto spare = static_cast<double>(total - floor * count);
    double denom = 0.0;
    for (auto s : scores) denom += s + 1.0;

    std::vector<std::size_t> target(count);
    std::size_t sum = 0;
    for (std::size_t i = 0; i < count; ++i) {
        target[i] = floor + static_cast<std::size_t>(std::floor(spare * (scores[i] + 1.0) / denom + 0.5));
        sum += target[i];
    }

    // Residue goes to the highest score (lowest id on ties); removals that
    // would cross the floor fall through to the next island in that order.
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return scores[a] > scores[b]; });
    if (sum < total) {
        target[order.front()] += total - sum;
    } else {
        auto excess = sum - total;
        for (auto i : order) {
            const auto take = std::min(excess, target[i] - floor);
            target[i] -= take;
            excess -= take;
            if (excess == 0) break;
        }
    }
    return target;
}

void resize(std::vector<Island>& islands, SizingMode mode, std::size_t total, std::size_t floor,
            const Objective& objective) {
    if (mode == SizingMode::cooperative) return;
    std::vector<double> scores;
    for (const auto& isl : islands) scores.push_back(isl.score);
    const auto target = hostile_targets(scores, total, floor);
    for (std::size_t i = 0; i < islands.size(); ++i) {
        auto& isl = islands[i];
        auto& pop = isl.population;
        if (pop.size() > target[i]) {
            pop.resize(target[i]);
        } else if (pop.size() < target[i]) {
            const auto parent = pop.front().chromosome;
            while (pop.size() < target[i]) {
                pop.push_back(evaluate(isl.codec, isl.codec.mutate(parent, isl.mutation_rate, isl.rng), objective));
            }
            sort_population(pop);
        }
    }
}

// --- configuration ----------------------------------------------------------------

std::size_t EngineConfig::total_population() const {
    std::size_t total = 0;
    for (const auto& s : islands) total += s.size;
    return total;
}

std::vector<EncodingScheme> EngineConfig::schemes() const {
    std::vector<EncodingScheme> out;
    for (const auto& s : islands) out.push_back(s.scheme);
    return out;
}

Topology EngineConfig::resolved_topology() const {
    return topology ? *topology : Topology::complete(schemes());
}

void EngineConfig::validate() const {
    auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
    if (islands.empty()) fail("at least one island is required");
    for (std::size_t i = 0; i < islands.size(); ++i) {
        if (islands[i].size == 0) fail("island " + std::to_string(i) + " has size 0");
        if (islands[i].size < floor) {
            fail("island " + std::to_string(i) + " size " + std::to_string(islands[i].size) + " is below the floor " +
                 std::to_string(floor));
        }
        if (islands[i].scheme.kind == SchemeKind::cut && islands[i].scheme.max_cuts == 0) {
            fail("island " + std::to_string(i) + ": cut scheme needs max_cuts >= 1");
        }
    }
    if (epochs == 0 || generations_per_epoch == 0) fail("epochs and generations_per_epoch must be positive");
    if (tournament_size == 0) fail("tournament_size must be positive");
    if (elitism == 0) fail("elitism must be positive");
    if (floor == 0) fail("floor must be positive");
    if (!(crossover_probability >= 0.0 && crossover_probability <= 1.0)) fail("crossover_probability must lie in [0, 1]");
    if (mutation_rate && !(*mutation_rate >= 0.0 && *mutation_rate <= 1.0)) fail("mutation_rate must lie in [0, 1]");
    if (penalty && !(*penalty >= 0.0 && std::isfinite(*penalty))) fail("penalty must be a finite value >= 0");
    if (!(smoothing >= 0.0 && smoothing <= 1.0)) fail("smoothing must lie in [0, 1]");
    if (constraints.max_cluster_size && *constraints.max_cluster_size == 0) fail("max_cluster_size must be >= 1");
    if (constraints.max_clusters && *constraints.max_clusters == 0) fail("max_clusters must be >= 1");
    if (floor * islands.size() > total_population()) fail("floor times island count exceeds total population");
    if (topology) topology->validate(islands.size());
}

std::string_view mode_name(SizingMode mode) {
    return mode == SizingMode::hostile ? "hostile" : "cooperative";
}

// --- run loop ---------------------------------------------------------------------

namespace {

struct GlobalBest {
    double fitness = std::numeric_limits<double>::infinity();
    Partition partition;
    std::size_t island = 0;

    bool offer(const Individual& ind, std::size_t island_id) {
        if (!(ind.fitness < fitness - improvement_tolerance)) return false;
        fitness = ind.fitness;
        partition = ind.partition;
        island = island_id;
        return true;
    }
};

struct Improvement {
    std::size_t generation;
    Individual individual;
};

std::vector<Improvement> evolve(Island& island, const Objective& objective, const GaParams& base,
                                std::size_t generations) {
    GaParams params = base;
    params.mutation_rate = island.mutation_rate;
    std::vector<Improvement> trace;
    double best = island.best().fitness;
    for (std::size_t gen = 1; gen <= generations; ++gen) {
        step_generation(island, objective, params);
        if (island.best().fitness < best - improvement_tolerance) {
            best = island.best().fitness;
            trace.push_back({gen, island.best()});
        }
    }
    return trace;
}

}  // namespace

RunResult run(const Graph& g, const EngineConfig& cfg) {
    cfg.validate();
    if (g.order() < 2 && std::ranges::any_of(cfg.islands, [](const auto& s) { return s.scheme.kind == SchemeKind::cut; })) {
        throw std::invalid_argument("cut scheme needs a graph with at least two vertices");
    }
    const Objective objective{&g, cfg.constraints, cfg.penalty.value_or(g.total_weight() + 1.0)};
    const auto topology = cfg.resolved_topology();
    const auto total = cfg.total_population();
    const GaParams params{cfg.tournament_size, cfg.crossover_probability, 0.0, cfg.elitism};

    std::vector<Island> islands;
    for (std::size_t i = 0; i < cfg.islands.size(); ++i) {
        Codec codec(cfg.islands[i].scheme, g);
        const double rate = cfg.mutation_rate.value_or(codec.length() ? 1.0 / static_cast<double>(codec.length()) : 0.0);
        islands.push_back(make_island(i, codec, cfg.islands[i].size, objective, rate, cfg.seed));
    }

    GlobalBest global;
    for (const auto& isl : islands) global.offer(isl.best(), isl.id);

    RunResult result;
    result.seed = cfg.seed;
    std::vector<std::size_t> carried(islands.size(), 0);
    std::vector<std::vector<Improvement>> traces(islands.size());

    for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
        if (cfg.parallel && islands.size() > 1) {
            std::vector<std::jthread> workers;
            for (std::size_t i = 0; i < islands.size(); ++i) {
                workers.emplace_back([&, i] { traces[i] = evolve(islands[i], objective, params, cfg.generations_per_epoch); });
            }
        } else {
            for (std::size_t i = 0; i < islands.size(); ++i) {
                traces[i] = evolve(islands[i], objective, params, cfg.generations_per_epoch);
            }
        }

        // Credit global-best improvements in (generation, island id) order.
        std::vector<std::size_t> improvements = carried;
        std::fill(carried.begin(), carried.end(), 0);
        std::vector<std::size_t> cursor(islands.size(), 0);
        for (std::size_t gen = 1; gen <= cfg.generations_per_epoch; ++gen) {
            for (std::size_t i = 0; i < islands.size(); ++i) {
                auto& c = cursor[i];
                if (c < traces[i].size() && traces[i][c].generation == gen) {
                    if (global.offer(traces[i][c].individual, i)) ++improvements[i];
                    ++c;
                }
            }
        }

        for (auto& isl : islands) isl.migration_failures = 0;
        migrate(islands, topology, objective);
        // Lossy re-encoding can land a migrant on a better phenotype.
        for (const auto& isl : islands) {
            if (global.offer(isl.best(), isl.id)) ++improvements[isl.id];
        }

        update_scores(islands, improvements, cfg.smoothing);
        resize(islands, cfg.mode, total, cfg.floor, objective);
        for (const auto& isl : islands) {
            if (global.offer(isl.best(), isl.id)) ++carried[isl.id];
        }

        for (const auto& isl : islands) {
            result.log.push_back({epoch, isl.id, scheme_name(isl.scheme()), isl.size(), isl.best().fitness,
                                  global.fitness, improvements[isl.id], isl.migration_failures});
        }
    }

    result.best = global.partition;
    result.best_fitness = global.fitness;
    result.best_cut = cut_weight(g, global.partition);
    result.best_island = global.island;
    return result;
}

std::string format_log_csv(const std::vector<LogRow>& log) {
    std::string out = std::string(log_csv_header) + "\n";
    for (const auto& r : log) {
        out += std::to_string(r.epoch) + "," + std::to_string(r.island) + "," + r.scheme + "," +
               std::to_string(r.size) + "," + detail::format_number(r.island_best) + "," +
               detail::format_number(r.global_best) + "," + std::to_string(r.improvements) + "," +
               std::to_string(r.migration_failures) + "\n";
    }
    return out;
}

}  // namespace hpga
