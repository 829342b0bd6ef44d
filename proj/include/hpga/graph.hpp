#ifndef HPGA_GRAPH_HPP
#define HPGA_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hpga {

class Rng;

/// Raised for malformed graph/partition/config text; carries the offending line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class OracleLimitExceeded : public std::runtime_error {
public:
    OracleLimitExceeded(std::size_t n, std::size_t limit)
        : std::runtime_error("oracle limit exceeded: graph has " + std::to_string(n) +
                             " vertices, limit is " + std::to_string(limit)) {}
};

class InfeasibleConstraints : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Edge {
    std::size_t u;  // u < v, 0-based
    std::size_t v;
    double w;
};

/// Weighted undirected graph. Edge order is part of the encoding semantics:
/// edge k of the input is bit k of every edge-indexed vector.
class Graph {
public:
    Graph() = default;
    Graph(std::size_t n, std::vector<Edge> edges);

    std::size_t order() const noexcept { return n_; }
    std::size_t size() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const Edge& edge(std::size_t k) const { return edges_.at(k); }

    /// Edge indices incident to vertex v, ascending.
    const std::vector<std::size_t>& incident(std::size_t v) const { return incident_.at(v); }

    double total_weight() const noexcept { return total_weight_; }
    double weighted_degree(std::size_t v) const;

    friend bool operator==(const Graph& a, const Graph& b);

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> incident_;
    double total_weight_ = 0.0;
};

/// Vertex-to-cluster assignment with labels 0..k-1. Canonical when labels
/// appear in order of each cluster's smallest vertex.
struct Partition {
    std::vector<std::size_t> labels;
    std::size_t k = 0;

    std::size_t order() const noexcept { return labels.size(); }
    std::vector<std::size_t> cluster_sizes() const;
    std::vector<std::vector<std::size_t>> clusters() const;
    bool is_canonical() const;

    static Partition single(std::size_t n);
    static Partition singletons(std::size_t n);

    friend bool operator==(const Partition&, const Partition&) = default;
};

struct Constraints {
    std::optional<std::size_t> max_cluster_size;
    std::optional<std::size_t> max_clusters;

    bool satisfied_by(const Partition& p) const;

    friend bool operator==(const Constraints&, const Constraints&) = default;
};

Graph parse_graph(std::string_view text);
Graph load_graph(const std::string& path);
std::string format_graph(const Graph& g);

double cut_weight(const Graph& g, const Partition& p);
double intra_weight(const Graph& g, const Partition& p);

/// Relabels by increasing smallest member. Input labels may be any values.
Partition canonicalize(const std::vector<std::size_t>& labels);
Partition canonicalize(const Partition& p);

/// Clusters are the connected components of (V, intra). `intra` holds edge indices.
Partition components_from_intra(const Graph& g, const std::vector<std::size_t>& intra);

struct OracleResult {
    Partition partition;
    double weight;
};

inline constexpr std::size_t default_oracle_limit = 10;

/// Exhaustive minimum over all set partitions satisfying `c`, enumerated as
/// restricted-growth strings in lexicographic order; the first minimum wins.
OracleResult brute_force_optimum(const Graph& g, const Constraints& c,
                                 std::size_t limit = default_oracle_limit);

/// Shortest decimal that round-trips, `.` separator regardless of locale.
std::string format_weight(double w);

/// `k;a1,...,an` with 1-based labels.
std::string format_partition(const Partition& p);
Partition parse_partition(std::string_view text);

/// G(n, p) with integer weights in [wmin, wmax], resampled until connected.
/// Edges are listed in lexicographic (u, v) order.
Graph random_connected_graph(std::size_t n, double edge_probability, int wmin, int wmax,
                             Rng& rng);

}  // namespace hpga

#endif  // HPGA_GRAPH_HPP
