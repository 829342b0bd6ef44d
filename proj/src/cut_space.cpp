#include "hpga/cut_space.hpp"

#include <stdexcept>

namespace hpga {

EdgeVector nodal_cut(const Graph& g, std::size_t vertex) {
    if (vertex >= g.order()) throw std::out_of_range("vertex index out of range");
    EdgeVector cut(g.size());
    for (auto k : g.incident(vertex)) cut.set(k);
    return cut;
}

NodalBasis build_basis(const Graph& g) {
    if (g.order() < 2) throw std::invalid_argument("nodal basis needs at least two vertices");
    NodalBasis basis;
    basis.edge_count = g.size();
    basis.rows.reserve(g.order() - 1);
    for (std::size_t v = 0; v + 1 < g.order(); ++v) basis.rows.push_back(nodal_cut(g, v));
    return basis;
}

EdgeVector combine_cuts(const NodalBasis& basis, const BitVector& selector) {
    if (selector.size() != basis.rows.size()) {
        throw std::invalid_argument("selector length " + std::to_string(selector.size()) +
                                    " does not match basis size " + std::to_string(basis.rows.size()));
    }
    EdgeVector cut(basis.edge_count);
    for (auto i = selector.find_first(); i != BitVector::npos; i = selector.find_next(i)) {
        cut ^= basis.rows[i];
    }
    return cut;
}

EdgeVector boundary(const Graph& g, const Partition& p, std::size_t cluster) {
    if (cluster >= p.k) throw std::out_of_range("cluster index out of range");
    EdgeVector cut(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        const auto& e = g.edge(k);
        if ((p.labels[e.u] == cluster) != (p.labels[e.v] == cluster)) cut.set(k);
    }
    return cut;
}

EdgeVector inter_edges(const Graph& g, const Partition& p) {
    EdgeVector cut(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        const auto& e = g.edge(k);
        if (p.labels[e.u] != p.labels[e.v]) cut.set(k);
    }
    return cut;
}

std::string format_edge_set(const EdgeVector& edges) {
    std::string out = "{";
    bool first = true;
    for (auto k = edges.find_first(); k != EdgeVector::npos; k = edges.find_next(k)) {
        if (!first) out += ",";
        out += "e" + std::to_string(k + 1);
        first = false;
    }
    return out + "}";
}

BitVector parse_bits(std::string_view bits) {
    BitVector out;
    for (char ch : bits) {
        if (ch == '|' || ch == ' ') continue;
        if (ch != '0' && ch != '1') {
            throw std::invalid_argument(std::string("invalid bit character '") + ch + "'");
        }
        out.push_back(ch == '1');
    }
    return out;
}

std::string format_bits(const BitVector& bits) {
    std::string out(bits.size(), '0');
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits.test(i)) out[i] = '1';
    }
    return out;
}

BitVector bits_from_indices(std::size_t size, std::initializer_list<std::size_t> set) {
    BitVector out(size);
    for (auto i : set) out.set(i);
    return out;
}

}  // namespace hpga
