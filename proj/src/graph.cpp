#include "hpga/graph.hpp"

#include "hpga/rng.hpp"
#include "text.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace hpga {

Graph::Graph(std::size_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)), incident_(n) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        auto& e = edges_[k];
        if (e.u == e.v) throw std::invalid_argument("self-loop on vertex " + std::to_string(e.u + 1));
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.v >= n_) throw std::invalid_argument("vertex index out of range");
        if (!(e.w >= 0.0) || !std::isfinite(e.w)) throw std::invalid_argument("negative or non-finite weight");
        if (!seen.emplace(e.u, e.v).second) {
            throw std::invalid_argument("duplicate edge " + std::to_string(e.u + 1) + " " +
                                        std::to_string(e.v + 1));
        }
        incident_[e.u].push_back(k);
        incident_[e.v].push_back(k);
        total_weight_ += e.w;
    }
}

double Graph::weighted_degree(std::size_t v) const {
    double sum = 0.0;
    for (auto k : incident(v)) sum += edges_[k].w;
    return sum;
}

bool operator==(const Graph& a, const Graph& b) {
    if (a.n_ != b.n_ || a.edges_.size() != b.edges_.size()) return false;
    for (std::size_t k = 0; k < a.edges_.size(); ++k) {
        const auto& x = a.edges_[k];
        const auto& y = b.edges_[k];
        if (x.u != y.u || x.v != y.v || x.w != y.w) return false;
    }
    return true;
}

std::vector<std::size_t> Partition::cluster_sizes() const {
    std::vector<std::size_t> sizes(k, 0);
    for (auto c : labels) ++sizes.at(c);
    return sizes;
}

std::vector<std::vector<std::size_t>> Partition::clusters() const {
    std::vector<std::vector<std::size_t>> out(k);
    for (std::size_t v = 0; v < labels.size(); ++v) out.at(labels[v]).push_back(v);
    return out;
}

bool Partition::is_canonical() const {
    std::size_t next = 0;
    for (auto c : labels) {
        if (c > next) return false;
        if (c == next) ++next;
    }
    return next == k;
}

Partition Partition::single(std::size_t n) {
    return {std::vector<std::size_t>(n, 0), n == 0 ? std::size_t{0} : std::size_t{1}};
}

Partition Partition::singletons(std::size_t n) {
    Partition p{std::vector<std::size_t>(n), n};
    std::iota(p.labels.begin(), p.labels.end(), std::size_t{0});
    return p;
}

bool Constraints::satisfied_by(const Partition& p) const {
    if (max_clusters && p.k > *max_clusters) return false;
    if (max_cluster_size) {
        for (auto s : p.cluster_sizes()) {
            if (s > *max_cluster_size) return false;
        }
    }
    return true;
}

namespace {

template <typename T>
bool parse_integer(std::string_view tok, T& out) {
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc{} && ptr == tok.data() + tok.size();
}

}  // namespace

Graph parse_graph(std::string_view text) {
    std::size_t n = 0;
    std::size_t m = 0;
    bool have_header = false;
    std::vector<Edge> edges;
    std::set<std::pair<std::size_t, std::size_t>> seen;

    detail::for_each_line(text, [&](std::size_t lineno, std::string_view line) {
        line = detail::trim(line);
        if (line.empty() || line.front() == '#') return;
        const auto tok = detail::split_ws(line);
        if (!have_header) {
            if (tok.size() != 2 || !parse_integer(tok[0], n) || !parse_integer(tok[1], m)) {
                throw ParseError(lineno, "expected header `n m`");
            }
            if (n == 0) throw ParseError(lineno, "graph must have at least one vertex");
            have_header = true;
            return;
        }
        if (edges.size() == m) throw ParseError(lineno, "more than " + std::to_string(m) + " edge lines");
        std::size_t u = 0;
        std::size_t v = 0;
        double w = 0.0;
        if (tok.size() != 3 || !parse_integer(tok[0], u) || !parse_integer(tok[1], v)) {
            throw ParseError(lineno, "expected edge line `u v w`");
        }
        auto [ptr, ec] = std::from_chars(tok[2].data(), tok[2].data() + tok[2].size(), w,
                                         std::chars_format::fixed);
        if (ec != std::errc{} || ptr != tok[2].data() + tok[2].size() || !std::isfinite(w)) {
            throw ParseError(lineno, "bad weight `" + std::string(tok[2]) + "`");
        }
        if (w < 0.0) throw ParseError(lineno, "negative weight");
        if (u < 1 || u > n || v < 1 || v > n) throw ParseError(lineno, "vertex index out of range");
        if (u == v) throw ParseError(lineno, "self-loop");
        if (u > v) std::swap(u, v);
        if (!seen.emplace(u, v).second) throw ParseError(lineno, "duplicate edge");
        edges.push_back({u - 1, v - 1, w});
    });

    if (!have_header) throw ParseError(1, "missing header `n m`");
    if (edges.size() != m) {
        throw ParseError(detail::count_lines(text), "expected " + std::to_string(m) +
                                                        " edge lines, found " + std::to_string(edges.size()));
    }
    return Graph(n, std::move(edges));
}

Graph load_graph(const std::string& path) {
    return parse_graph(detail::read_file(path));
}

std::string format_graph(const Graph& g) {
    std::string out = std::to_string(g.order()) + " " + std::to_string(g.size()) + "\n";
    for (const auto& e : g.edges()) {
        out += std::to_string(e.u + 1) + " " + std::to_string(e.v + 1) + " " + detail::format_number(e.w) + "\n";
    }
    return out;
}

double cut_weight(const Graph& g, const Partition& p) {
    double sum = 0.0;
    for (const auto& e : g.edges()) {
        if (p.labels[e.u] != p.labels[e.v]) sum += e.w;
    }
    return sum;
}

double intra_weight(const Graph& g, const Partition& p) {
    double sum = 0.0;
    for (const auto& e : g.edges()) {
        if (p.labels[e.u] == p.labels[e.v]) sum += e.w;
    }
    return sum;
}

Partition canonicalize(const std::vector<std::size_t>& labels) {
    constexpr auto unset = std::numeric_limits<std::size_t>::max();
    std::vector<std::pair<std::size_t, std::size_t>> map;  // (old, new), small k
    Partition out{std::vector<std::size_t>(labels.size(), unset), 0};
    for (std::size_t v = 0; v < labels.size(); ++v) {
        auto it = std::find_if(map.begin(), map.end(), [&](const auto& e) { return e.first == labels[v]; });
        if (it == map.end()) {
            map.emplace_back(labels[v], out.k++);
            out.labels[v] = out.k - 1;
        } else {
            out.labels[v] = it->second;
        }
    }
    return out;
}

Partition canonicalize(const Partition& p) { return canonicalize(p.labels); }

Partition components_from_intra(const Graph& g, const std::vector<std::size_t>& intra) {
    // union-find over the intra edges
    std::vector<std::size_t> parent(g.order());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (auto k : intra) {
        const auto& e = g.edge(k);
        auto a = find(e.u);
        auto b = find(e.v);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<std::size_t> roots(g.order());
    for (std::size_t v = 0; v < g.order(); ++v) roots[v] = find(v);
    return canonicalize(roots);
}

namespace {

struct Enumerator {
    const Graph& g;
    const Constraints& c;
    std::vector<std::size_t> labels;
    std::vector<std::size_t> sizes;
    std::vector<std::size_t> best;
    double best_weight = std::numeric_limits<double>::infinity();

    void visit(std::size_t v, std::size_t used, double weight) {
        if (weight > best_weight + 1e-9) return;
        if (v == g.order()) {
            if (weight < best_weight - 1e-9) {
                best_weight = weight;
                best = labels;
            }
            return;
        }
        const std::size_t max_label = c.max_clusters ? std::min(used + 1, *c.max_clusters) : used + 1;
        for (std::size_t label = 0; label < max_label; ++label) {
            if (label < used && c.max_cluster_size && sizes[label] >= *c.max_cluster_size) continue;
            double added = 0.0;
            for (auto k : g.incident(v)) {
                const auto& e = g.edge(k);
                const auto other = e.u == v ? e.v : e.u;
                if (other < v && labels[other] != label) added += e.w;
            }
            labels[v] = label;
            if (label == used) sizes.push_back(0);
            ++sizes[label];
            visit(v + 1, std::max(used, label + 1), weight + added);
            --sizes[label];
            if (label == used) sizes.pop_back();
        }
    }
};

}  // namespace

OracleResult brute_force_optimum(const Graph& g, const Constraints& c, std::size_t limit) {
    if (g.order() > limit) throw OracleLimitExceeded(g.order(), limit);
    const auto cap_size = c.max_cluster_size.value_or(g.order());
    const auto cap_count = c.max_clusters.value_or(g.order());
    if (cap_size == 0 || cap_count == 0 || cap_size * cap_count < g.order()) {
        throw InfeasibleConstraints("infeasible constraints: no partition of " + std::to_string(g.order()) +
                                    " vertices satisfies them");
    }
    Enumerator e{g, c, std::vector<std::size_t>(g.order(), 0), {}, {}};
    e.visit(0, 0, 0.0);
    Partition p = canonicalize(e.best);
    return {p, cut_weight(g, p)};
}

std::string format_weight(double w) { return detail::format_number(w); }

std::string format_partition(const Partition& p) {
    std::string out = std::to_string(p.k) + ";";
    for (std::size_t v = 0; v < p.labels.size(); ++v) {
        if (v) out += ",";
        out += std::to_string(p.labels[v] + 1);
    }
    return out;
}

Partition parse_partition(std::string_view text) {
    text = detail::trim(text);
    const auto semi = text.find(';');
    if (semi == std::string_view::npos) throw ParseError(1, "partition must look like `k;a1,...,an`");
    std::size_t k = 0;
    if (!parse_integer(detail::trim(text.substr(0, semi)), k)) throw ParseError(1, "bad cluster count");
    std::vector<std::size_t> labels;
    for (auto tok : detail::split(text.substr(semi + 1), ',')) {
        std::size_t a = 0;
        if (!parse_integer(detail::trim(tok), a) || a < 1 || a > k) {
            throw ParseError(1, "bad cluster label `" + std::string(tok) + "`");
        }
        labels.push_back(a - 1);
    }
    Partition p{std::move(labels), k};
    if (std::ranges::any_of(p.cluster_sizes(), [](auto s) { return s == 0; })) {
        throw ParseError(1, "cluster labels must use every index 1..k");
    }
    return p;
}

Graph random_connected_graph(std::size_t n, double edge_probability, int wmin, int wmax, Rng& rng) {
    const auto span = static_cast<std::size_t>(wmax - wmin + 1);
    for (;;) {
        std::vector<Edge> edges;
        for (std::size_t u = 0; u < n; ++u) {
            for (std::size_t v = u + 1; v < n; ++v) {
                if (rng.bernoulli(edge_probability)) {
                    edges.push_back({u, v, static_cast<double>(wmin + static_cast<int>(rng.below(span)))});
                }
            }
        }
        Graph g(n, std::move(edges));
        std::vector<std::size_t> all(g.size());
        std::iota(all.begin(), all.end(), std::size_t{0});
        if (components_from_intra(g, all).k <= 1) return g;
    }
}

}  // namespace hpga
