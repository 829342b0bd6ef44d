#ifndef HPGA_CUT_SPACE_HPP
#define HPGA_CUT_SPACE_HPP

#include "hpga/graph.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace hpga {

/// Dense bit-vector over GF(2). Used both for edge sets (bit k <-> edge k)
/// and for the binary chromosomes.
using BitVector = boost::dynamic_bitset<std::uint64_t>;
using EdgeVector = BitVector;

/// Rows are the nodal cuts of vertices 0..n-2, unreduced. The last vertex's
/// nodal cut is the XOR of the others, so it is left out.
struct NodalBasis {
    std::vector<EdgeVector> rows;
    std::size_t edge_count = 0;
};

EdgeVector nodal_cut(const Graph& g, std::size_t vertex);
NodalBasis build_basis(const Graph& g);

/// XOR of the basis rows picked by `selector` (length n-1).
EdgeVector combine_cuts(const NodalBasis& basis, const BitVector& selector);

/// Edges with exactly one endpoint in `cluster`.
EdgeVector boundary(const Graph& g, const Partition& p, std::size_t cluster);

/// Edges whose endpoints lie in different clusters.
EdgeVector inter_edges(const Graph& g, const Partition& p);

/// `{e2,e5,e8,e9}`: 1-based edge numbers, ascending.
std::string format_edge_set(const EdgeVector& edges);

/// Bit i of the result is character i of `bits` ('0'/'1'); `|` and spaces are skipped.
BitVector parse_bits(std::string_view bits);
std::string format_bits(const BitVector& bits);

/// Convenience for tests and literals: set bits at the given positions.
BitVector bits_from_indices(std::size_t size, std::initializer_list<std::size_t> set);

}  // namespace hpga

#endif  // HPGA_CUT_SPACE_HPP
