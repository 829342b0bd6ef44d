#include "hpga/graph.hpp"
#include "hpga/rng.hpp"
#include "hpga/selftest.hpp"

#include <doctest.h>

#include <set>

using namespace hpga;

namespace {

const std::string g6_text = "6 9\n1 2 1\n1 5 1\n2 3 2\n3 4 2\n2 5 1\n1 6 3\n4 6 1\n4 5 1\n5 6 1";

Partition from_text(std::string_view s) { return parse_partition(s); }

// Reachability closure over an edge subset, independent of union-find.
std::vector<std::vector<bool>> reachable(const Graph& g, const std::vector<std::size_t>& edges) {
    const auto n = g.order();
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (std::size_t v = 0; v < n; ++v) r[v][v] = true;
    for (auto k : edges) r[g.edge(k).u][g.edge(k).v] = r[g.edge(k).v][g.edge(k).u] = true;
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (r[a][m] && r[m][b]) r[a][b] = true;
    return r;
}

}  // namespace

TEST_CASE("parse_graph reads the reference graph in file order") {
    const auto g = parse_graph(g6_text);
    CHECK(g == reference_graph());
    CHECK(g.order() == 6);
    CHECK(g.size() == 9);
    CHECK(g.edge(5).u == 0);
    CHECK(g.edge(5).v == 5);
    CHECK(g.edge(5).w == 3.0);
    CHECK(g.total_weight() == 13.0);
}

TEST_CASE("parse_graph accepts comments, CRLF and reversed endpoints") {
    const auto g = parse_graph("# header comment\r\n2 1\r\n# edge\r\n2 1 5\r\n");
    REQUIRE(g.size() == 1);
    CHECK(g.edge(0).u == 0);
    CHECK(g.edge(0).v == 1);
    CHECK(g.edge(0).w == 5.0);
    CHECK(parse_graph("2 1\n1 2 5") == g);
    CHECK(parse_graph("3 1\n1 3 0.25").edge(0).w == 0.25);
}

TEST_CASE("parse_graph reports the offending line") {
    auto line_of = [](std::string_view text) -> std::size_t {
        try {
            (void)parse_graph(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("3 3\n1 1 1\n1 2 1\n2 3 1") == 2);          // self-loop
    CHECK(line_of("3 2\n1 2 1\n2 1 4") == 3);                 // duplicate
    CHECK(line_of("3 1\n1 4 1") == 2);                        // out of range
    CHECK(line_of("3 1\n1 0 1") == 2);
    CHECK(line_of("3 1\n1 2 -1") == 2);                       // negative weight
    CHECK(line_of("3 1\n1 2 x") == 2);
    CHECK(line_of("3 1\n1 2") == 2);
    CHECK(line_of("three 1\n1 2 1") == 1);
    CHECK(line_of("2 1\n1 2 1\n1 2 1") == 3);                 // extra edge line
    CHECK(line_of("# only a comment\n") == 1);
    CHECK_THROWS_WITH_AS(parse_graph("3 3\n1 1 1\n"), "line 2: self-loop", ParseError);
}

TEST_CASE("cut_weight on the reference partition") {
    const auto g = reference_graph();
    const auto star = from_text("3;1,2,2,2,3,1");
    CHECK(cut_weight(g, star) == 6.0);
    CHECK(cut_weight(g, Partition::single(6)) == 0.0);
    CHECK(cut_weight(g, Partition::singletons(6)) == 13.0);
}

TEST_CASE("cut and intra weight add up to the total") {
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        const auto g = random_connected_graph(2 + rng.below(9), 0.5, 1, 5, rng);
        const auto p = random_partition(g.order(), rng);
        CHECK(cut_weight(g, p) + intra_weight(g, p) == doctest::Approx(g.total_weight()));
    }
}

TEST_CASE("canonicalize") {
    CHECK(format_partition(canonicalize(std::vector<std::size_t>{3, 1, 1, 1, 2, 3})) == "3;1,2,2,2,3,1");
    const auto star = from_text("3;1,2,2,2,3,1");
    CHECK(canonicalize(star) == star);
    const auto pair = canonicalize(std::vector<std::size_t>{7, 7});
    CHECK(pair.k == 1);
    CHECK(pair.labels == std::vector<std::size_t>{0, 0});
}

TEST_CASE("canonicalize is idempotent and preserves the grouping") {
    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        std::vector<std::size_t> labels(1 + rng.below(12));
        for (auto& l : labels) l = rng.below(20);
        const auto p = canonicalize(labels);
        CHECK(p.is_canonical());
        CHECK(canonicalize(p) == p);
        for (std::size_t a = 0; a < labels.size(); ++a)
            for (std::size_t b = 0; b < labels.size(); ++b)
                CHECK((labels[a] == labels[b]) == (p.labels[a] == p.labels[b]));
    }
}

TEST_CASE("components_from_intra") {
    const auto g = reference_graph();
    CHECK(format_partition(components_from_intra(g, {2, 3, 5})) == "3;1,2,2,2,3,1");
    CHECK(components_from_intra(g, {}) == Partition::singletons(6));
    CHECK(components_from_intra(g, {0, 1, 2, 3, 4, 5, 6, 7, 8}) == Partition::single(6));
}

TEST_CASE("components_from_intra groups exactly the connected vertices (all edge subsets)") {
    const auto g = reference_graph();
    for (std::uint32_t mask = 0; mask < (1u << g.size()); ++mask) {
        std::vector<std::size_t> intra;
        for (std::size_t k = 0; k < g.size(); ++k)
            if (mask & (1u << k)) intra.push_back(k);
        const auto p = components_from_intra(g, intra);
        const auto r = reachable(g, intra);
        CHECK(p.is_canonical());
        for (std::size_t a = 0; a < 6; ++a)
            for (std::size_t b = 0; b < 6; ++b) CHECK((p.labels[a] == p.labels[b]) == r[a][b]);
    }
}

TEST_CASE("brute_force_optimum") {
    const auto g = reference_graph();
    SUBCASE("unconstrained optimum is the single cluster") {
        const auto best = brute_force_optimum(g, {});
        CHECK(best.partition == Partition::single(6));
        CHECK(best.weight == 0.0);
    }
    SUBCASE("cluster size at most three") {
        // Frozen from an independent enumeration of all 203 set partitions.
        const auto best = brute_force_optimum(g, {3, std::nullopt});
        CHECK(best.weight == 4.0);
        CHECK(format_partition(best.partition) == "2;1,2,2,2,1,1");
    }
    SUBCASE("forced split of a single edge") {
        const auto two = parse_graph("2 1\n1 2 5");
        const auto best = brute_force_optimum(two, {1, 2});
        CHECK(best.partition == Partition::singletons(2));
        CHECK(best.weight == 5.0);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(brute_force_optimum(g, {2, 2}), InfeasibleConstraints);
        Rng rng(3);
        const auto big = random_connected_graph(11, 0.5, 1, 5, rng);
        CHECK_THROWS_AS(brute_force_optimum(big, {}), OracleLimitExceeded);
        CHECK_THROWS_WITH(brute_force_optimum(big, {}),
                          "oracle limit exceeded: graph has 11 vertices, limit is 10");
    }
}

TEST_CASE("brute_force_optimum without constraints is always zero") {
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        const auto g = random_connected_graph(2 + rng.below(6), 0.5, 1, 5, rng);
        CHECK(brute_force_optimum(g, {}).weight == 0.0);
    }
}

TEST_CASE("brute_force_optimum agrees with a plain enumeration") {
    // Independent enumeration: all label vectors in [0,n)^n, canonicalized.
    Rng rng(9);
    for (int i = 0; i < 8; ++i) {
        const auto n = 3 + rng.below(4);
        const auto g = random_connected_graph(n, 0.6, 1, 5, rng);
        const Constraints c{1 + rng.below(n), std::nullopt};
        double best = 1e300;
        std::vector<std::size_t> labels(n, 0);
        for (;;) {
            const auto p = canonicalize(labels);
            if (c.satisfied_by(p)) best = std::min(best, cut_weight(g, p));
            std::size_t pos = 0;
            while (pos < n && ++labels[pos] == n) labels[pos++] = 0;
            if (pos == n) break;
        }
        const auto oracle = brute_force_optimum(g, c);
        CHECK(c.satisfied_by(oracle.partition));
        CHECK(oracle.weight == doctest::Approx(best));
    }
}

TEST_CASE("partition text form") {
    const auto p = parse_partition("3;1,2,2,2,3,1");
    CHECK(p.k == 3);
    CHECK(p.labels == std::vector<std::size_t>{0, 1, 1, 1, 2, 0});
    CHECK(format_partition(p) == "3;1,2,2,2,3,1");
    CHECK_THROWS_AS(parse_partition("3;1,2,4"), ParseError);
    CHECK_THROWS_AS(parse_partition("3;1,1,1"), ParseError);
    CHECK_THROWS_AS(parse_partition("1,1"), ParseError);
}

TEST_CASE("random_connected_graph is connected and in range") {
    Rng rng(1);
    for (int i = 0; i < 50; ++i) {
        const auto g = random_connected_graph(6 + rng.below(3), 0.5, 1, 5, rng);
        std::vector<std::size_t> all(g.size());
        for (std::size_t k = 0; k < g.size(); ++k) all[k] = k;
        CHECK(components_from_intra(g, all).k == 1);
        for (const auto& e : g.edges()) {
            CHECK(e.w >= 1.0);
            CHECK(e.w <= 5.0);
            CHECK(e.u < e.v);
        }
    }
}
