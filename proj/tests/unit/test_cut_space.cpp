#include "hpga/cut_space.hpp"
#include "hpga/rng.hpp"
#include "hpga/selftest.hpp"

#include <doctest.h>

using namespace hpga;

namespace {

// Edges with exactly one endpoint in the vertex set, computed edge by edge.
EdgeVector brute_boundary(const Graph& g, const std::vector<bool>& in) {
    EdgeVector out(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (in[g.edge(k).u] != in[g.edge(k).v]) out.set(k);
    }
    return out;
}

BitVector random_selector(std::size_t n, Rng& rng) {
    BitVector b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = rng.coin();
    return b;
}

}  // namespace

TEST_CASE("nodal_cut") {
    const auto g = reference_graph();
    CHECK(format_edge_set(nodal_cut(g, 4)) == "{e2,e5,e8,e9}");
    CHECK(format_edge_set(nodal_cut(g, 2)) == "{e3,e4}");
    const auto isolated = parse_graph("3 1\n1 2 1");
    CHECK(nodal_cut(isolated, 2).none());
    CHECK_THROWS_AS(nodal_cut(g, 6), std::out_of_range);
}

TEST_CASE("build_basis") {
    const auto g = reference_graph();
    const auto basis = build_basis(g);
    REQUIRE(basis.rows.size() == 5);
    for (std::size_t v = 0; v < 5; ++v) CHECK(basis.rows[v] == nodal_cut(g, v));

    const auto two = build_basis(parse_graph("2 1\n1 2 5"));
    REQUIRE(two.rows.size() == 1);
    CHECK(format_edge_set(two.rows[0]) == "{e1}");

    const auto path = build_basis(parse_graph("3 2\n1 2 1\n2 3 1"));
    REQUIRE(path.rows.size() == 2);
    CHECK(format_edge_set(path.rows[0]) == "{e1}");
    CHECK(format_edge_set(path.rows[1]) == "{e1,e2}");

    CHECK_THROWS_AS(build_basis(parse_graph("1 0")), std::invalid_argument);
}

TEST_CASE("combine_cuts reproduces the two worked cuts") {
    const auto g = reference_graph();
    const auto basis = build_basis(g);
    CHECK(format_edge_set(combine_cuts(basis, parse_bits("01110"))) == "{e1,e5,e7,e8}");
    CHECK(format_edge_set(combine_cuts(basis, parse_bits("00001"))) == "{e2,e5,e8,e9}");
    CHECK(combine_cuts(basis, parse_bits("00000")).none());
    CHECK_THROWS_AS(combine_cuts(basis, parse_bits("0000")), std::invalid_argument);
}

TEST_CASE("boundary") {
    const auto g = reference_graph();
    const auto star = parse_partition("3;1,2,2,2,3,1");
    CHECK(format_edge_set(boundary(g, star, star.labels[4])) == "{e2,e5,e8,e9}");
    CHECK(format_edge_set(boundary(g, star, star.labels[1])) == "{e1,e5,e7,e8}");
    CHECK(boundary(g, Partition::single(6), 0).none());
    CHECK_THROWS_AS(boundary(g, star, 3), std::out_of_range);
}

TEST_CASE("XOR of nodal cuts equals the subset boundary for every selector") {
    const auto g = reference_graph();
    const auto basis = build_basis(g);
    for (unsigned mask = 0; mask < 32; ++mask) {
        BitVector sel(5, mask);
        std::vector<bool> in(6, false);
        for (std::size_t v = 0; v < 5; ++v) in[v] = sel.test(v);
        CHECK(combine_cuts(basis, sel) == brute_boundary(g, in));
    }
}

TEST_CASE("combine_cuts is linear over GF(2)") {
    Rng rng(21);
    for (int i = 0; i < 300; ++i) {
        const auto g = random_connected_graph(2 + rng.below(11), 0.5, 1, 5, rng);
        const auto basis = build_basis(g);
        const auto a = random_selector(g.order() - 1, rng);
        const auto b = random_selector(g.order() - 1, rng);
        CHECK(combine_cuts(basis, a ^ b) == (combine_cuts(basis, a) ^ combine_cuts(basis, b)));
    }
}

TEST_CASE("all nodal cuts cancel and boundaries cover the inter edges") {
    Rng rng(4);
    for (int i = 0; i < 100; ++i) {
        const auto g = random_connected_graph(2 + rng.below(9), 0.5, 1, 5, rng);
        EdgeVector acc(g.size());
        for (std::size_t v = 0; v < g.order(); ++v) acc ^= nodal_cut(g, v);
        CHECK(acc.none());

        const auto p = random_partition(g.order(), rng);
        EdgeVector all(g.size());
        for (std::size_t c = 0; c < p.k; ++c) all |= boundary(g, p, c);
        CHECK(all == inter_edges(g, p));
    }
}

TEST_CASE("bit literals") {
    CHECK(format_bits(parse_bits("00001|01110|00000")) == "000010111000000");
    CHECK(parse_bits("101").test(0));
    CHECK_FALSE(parse_bits("101").test(1));
    CHECK_THROWS_AS(parse_bits("10a"), std::invalid_argument);
    CHECK(format_edge_set(EdgeVector(4)) == "{}");
}
