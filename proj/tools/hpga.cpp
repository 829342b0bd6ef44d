// hpga: command-line front end for the heterogeneous island-model partitioner.

#include "hpga/config.hpp"
#include "hpga/cut_space.hpp"
#include "hpga/encodings.hpp"
#include "hpga/engine.hpp"
#include "hpga/graph.hpp"
#include "hpga/selftest.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

std::string number(double x) { return hpga::format_weight(x); }

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

int cmd_solve(const std::string& graph_path, const std::string& config_path, std::optional<std::uint64_t> seed,
              const std::string& out_dir) {
    const auto g = hpga::load_graph(graph_path);
    auto cfg = hpga::load_config(config_path);
    if (seed) cfg.seed = *seed;

    const auto start = std::chrono::steady_clock::now();
    const auto result = hpga::run(g, cfg);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

    std::string summary;
    summary += "best_partition = " + hpga::format_partition(result.best) + "\n";
    summary += "cut_weight = " + number(result.best_cut) + "\n";
    summary += "penalized_weight = " + number(result.best_fitness) + "\n";
    summary += "best_island = " + std::to_string(result.best_island) + "\n";
    summary += "seed = " + std::to_string(result.seed) + "\n";

    std::filesystem::create_directories(out_dir);
    const auto dir = std::filesystem::path(out_dir);
    write_file(dir / "summary.txt", summary);
    write_file(dir / "log.csv", hpga::format_log_csv(result.log));

    std::cout << summary << "wall_time_seconds = " << number(elapsed.count()) << "\n"
              << "wrote " << (dir / "summary.txt").string() << " and " << (dir / "log.csv").string() << "\n";
    return 0;
}

int cmd_oracle(const std::string& graph_path, std::optional<std::size_t> max_cluster_size,
               std::optional<std::size_t> max_clusters, std::size_t limit) {
    const auto g = hpga::load_graph(graph_path);
    const hpga::Constraints c{max_cluster_size, max_clusters};
    const auto best = hpga::brute_force_optimum(g, c, limit);
    std::cout << "partition: " << hpga::format_partition(best.partition) << "\n"
              << "weight: " << number(best.weight) << "\n";
    return 0;
}

int cmd_decode(const std::string& graph_path, const std::string& scheme_name, const std::string& literal) {
    const auto g = hpga::load_graph(graph_path);
    const auto scheme = hpga::parse_scheme(scheme_name);
    if (scheme.kind == hpga::SchemeKind::cut && g.order() < 2) {
        throw std::invalid_argument("cut scheme needs a graph with at least two vertices");
    }
    const auto chromosome = hpga::parse_chromosome(scheme, literal, g);
    const auto p = hpga::decode(scheme, chromosome, g);

    if (const auto* cut = std::get_if<hpga::CutChromosome>(&chromosome)) {
        const auto basis = hpga::build_basis(g);
        for (std::size_t j = 0; j < cut->max_cuts; ++j) {
            std::cout << "cut " << (j + 1) << ": "
                      << hpga::format_edge_set(hpga::combine_cuts(basis, cut->group(j, g.order() - 1))) << "\n";
        }
    }
    std::cout << "partition: " << hpga::format_partition(p) << "\n"
              << "inter: " << hpga::format_edge_set(hpga::inter_edges(g, p)) << "\n"
              << "weight: " << number(hpga::cut_weight(g, p)) << "\n";
    return 0;
}

int cmd_selftest(const std::string& graph_path, std::size_t fuzz, std::uint64_t seed) {
    const auto g = hpga::load_graph(graph_path);
    const auto results = hpga::run_selftest(g, {fuzz, seed});
    std::cout << hpga::format_selftest_report(results);
    const bool ok = std::ranges::all_of(results, [](const auto& r) { return r.passed || r.skipped; });
    std::cout << (ok ? "selftest passed\n" : "selftest FAILED\n");
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heterogeneous island-model GA for weighted graph partitioning"};
    app.require_subcommand(1);

    std::string graph;
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out_dir = "hpga-out";
    auto* solve = app.add_subcommand("solve", "run the island-model GA");
    solve->add_option("--graph", graph, "edge-list graph file")->required()->check(CLI::ExistingFile);
    solve->add_option("--config", config, "engine configuration")->required()->check(CLI::ExistingFile);
    solve->add_option("--seed", seed, "override the configured master seed");
    solve->add_option("--out", out_dir, "output directory for summary.txt and log.csv");

    std::optional<std::size_t> max_cluster_size;
    std::optional<std::size_t> max_clusters;
    std::size_t limit = hpga::default_oracle_limit;
    auto* oracle = app.add_subcommand("oracle", "exhaustive optimum for small graphs");
    oracle->add_option("--graph", graph, "edge-list graph file")->required()->check(CLI::ExistingFile);
    oracle->add_option("--max-cluster-size", max_cluster_size)->check(CLI::PositiveNumber);
    oracle->add_option("--max-clusters", max_clusters)->check(CLI::PositiveNumber);
    oracle->add_option("--limit", limit, "largest vertex count to enumerate")->capture_default_str();

    std::string scheme;
    std::string chromosome;
    auto* dec = app.add_subcommand("decode", "decode one chromosome literal");
    dec->add_option("--graph", graph, "edge-list graph file")->required()->check(CLI::ExistingFile);
    dec->add_option("--scheme", scheme, "fractional | edge | cut:K | pmedian")->required();
    dec->add_option("--chromosome", chromosome, "chromosome literal")->required();

    std::size_t fuzz = 1000;
    std::uint64_t selftest_seed = 1;
    auto* self = app.add_subcommand("selftest", "run the encoding and cut-space property suites");
    self->add_option("--graph", graph, "edge-list graph file")->required()->check(CLI::ExistingFile);
    self->add_option("--fuzz", fuzz, "random cases per suite")->capture_default_str();
    self->add_option("--seed", selftest_seed, "seed for the random cases")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) return cmd_solve(graph, config, seed, out_dir);
        if (*oracle) return cmd_oracle(graph, max_cluster_size, max_clusters, limit);
        if (*dec) return cmd_decode(graph, scheme, chromosome);
        if (*self) return cmd_selftest(graph, fuzz, selftest_seed);
    } catch (const std::exception& e) {
        std::cerr << "hpga: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
