#ifndef HPGA_ENGINE_HPP
#define HPGA_ENGINE_HPP

#include "hpga/encodings.hpp"
#include "hpga/graph.hpp"
#include "hpga/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hpga {

/// Fitness differences below this are treated as ties.
inline constexpr double improvement_tolerance = 1e-9;

enum class SizingMode { cooperative, hostile };

/// Penalized cut weight: cut + penalty * (oversize excess + cluster-count excess).
double fitness(const Graph& g, const Partition& p, const Constraints& c, double penalty);

struct Objective {
    const Graph* graph;
    Constraints constraints;
    double penalty = 0.0;

    double operator()(const Partition& p) const { return fitness(*graph, p, constraints, penalty); }
};

struct Individual {
    Chromosome chromosome;
    Partition partition;  // decoded, canonical
    double fitness = 0.0;
};

struct GaParams {
    std::size_t tournament_size = 2;
    double crossover_probability = 0.9;
    double mutation_rate = 0.0;
    std::size_t elitism = 1;
};

/// One sub-population under one encoding. The population is kept sorted by
/// ascending fitness (stable), so front() is the best and back() the worst.
struct Island {
    std::size_t id = 0;
    Codec codec;
    std::vector<Individual> population;
    double score = 0.0;
    double mutation_rate = 0.0;
    Rng rng;
    std::size_t migration_failures = 0;  // current epoch

    std::size_t size() const noexcept { return population.size(); }
    const Individual& best() const { return population.front(); }
    const EncodingScheme& scheme() const noexcept { return codec.scheme(); }
};

/// Random initial population of `size` evaluated individuals.
Island make_island(std::size_t id, const Codec& codec, std::size_t size, const Objective& objective,
                   double mutation_rate, std::uint64_t master_seed);

Individual evaluate(const Codec& codec, Chromosome chromosome, const Objective& objective);

/// Restores the sorted-population invariant after edits.
void sort_population(std::vector<Individual>& population);

struct MigrationLink {
    std::size_t src = 0;
    std::size_t dst = 0;
    std::size_t count = 1;

    friend bool operator==(const MigrationLink&, const MigrationLink&) = default;
};

struct Topology {
    std::vector<MigrationLink> links;

    /// Complete digraph, one migrant per link, two per link into p-median islands.
    static Topology complete(const std::vector<EncodingScheme>& schemes);
    void validate(std::size_t island_count) const;

    friend bool operator==(const Topology&, const Topology&) = default;
};

struct IslandSpec {
    EncodingScheme scheme;
    std::size_t size = 30;

    friend bool operator==(const IslandSpec&, const IslandSpec&) = default;
};

struct EngineConfig {
    std::vector<IslandSpec> islands;
    std::optional<Topology> topology;  // unset: Topology::complete
    SizingMode mode = SizingMode::cooperative;
    std::size_t epochs = 10;
    std::size_t generations_per_epoch = 20;
    std::size_t tournament_size = 2;
    double crossover_probability = 0.9;
    std::optional<double> mutation_rate;  // unset: 1 / chromosome length, per island
    std::size_t elitism = 1;
    std::optional<double> penalty;  // unset: total edge weight + 1
    Constraints constraints;
    std::size_t floor = 5;
    double smoothing = 0.5;
    std::uint64_t seed = 1;
    bool parallel = true;  // execution only; results do not depend on it

    std::size_t total_population() const;
    std::vector<EncodingScheme> schemes() const;
    Topology resolved_topology() const;
    /// Throws std::invalid_argument describing the first violated invariant.
    void validate() const;

    friend bool operator==(const EngineConfig&, const EngineConfig&) = default;
};

struct LogRow {
    std::size_t epoch = 0;
    std::size_t island = 0;
    std::string scheme;
    std::size_t size = 0;
    double island_best = 0.0;
    double global_best = 0.0;
    std::size_t improvements = 0;
    std::size_t migration_failures = 0;

    friend bool operator==(const LogRow&, const LogRow&) = default;
};

struct RunResult {
    Partition best;
    double best_fitness = 0.0;
    double best_cut = 0.0;
    std::size_t best_island = 0;  // island credited with the best
    std::uint64_t seed = 0;
    std::vector<LogRow> log;
};

/// Elitism, then tournament selection, uniform crossover with probability
/// p_c and mutation; population size is unchanged.
void step_generation(Island& island, const Objective& objective, const GaParams& params);

/// Re-encodes a partition for another island. Throws CapacityExceeded.
Chromosome translate(const Partition& p, const Codec& destination);

/// Copy migration along the links in order. Each migrant replaces the
/// destination's worst individual; encode failures are counted on the
/// destination's `migration_failures`.
void migrate(std::vector<Island>& islands, const Topology& topology, const Objective& objective);

/// score <- alpha * score + (1 - alpha) * improvements
void update_scores(std::vector<Island>& islands, const std::vector<std::size_t>& improvements, double alpha);

/// Sizes for hostile mode: floor plus a share of the spare proportional to
/// score + 1, rounding residue settled at the best-scoring island.
std::vector<std::size_t> hostile_targets(const std::vector<double>& scores, std::size_t total, std::size_t floor);

/// Hostile mode moves islands to hostile_targets: shrinking drops the worst,
/// growing adds mutated copies of the best. Cooperative mode is a no-op.
void resize(std::vector<Island>& islands, SizingMode mode, std::size_t total, std::size_t floor,
            const Objective& objective);

RunResult run(const Graph& g, const EngineConfig& cfg);

std::string_view mode_name(SizingMode mode);

/// CSV with the fixed header
/// `epoch,island,scheme,size,island_best,global_best,improvements,migration_failures`.
std::string format_log_csv(const std::vector<LogRow>& log);
inline constexpr const char* log_csv_header =
    "epoch,island,scheme,size,island_best,global_best,improvements,migration_failures";

}  // namespace hpga

#endif  // HPGA_ENGINE_HPP
