#include "hpga/selftest.hpp"

#include "hpga/cut_space.hpp"
#include "hpga/encodings.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>

namespace hpga {

Graph reference_graph() {
    return Graph(6, {{0, 1, 1}, {0, 4, 1}, {1, 2, 2}, {2, 3, 2}, {1, 4, 1},
                     {0, 5, 3}, {3, 5, 1}, {3, 4, 1}, {4, 5, 1}});
}

bool has_reference_shape(const Graph& g) {
    const auto ref = reference_graph();
    if (g.order() != ref.order() || g.size() != ref.size()) return false;
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (g.edge(k).u != ref.edge(k).u || g.edge(k).v != ref.edge(k).v) return false;
    }
    return true;
}

bool is_valid_partition(const Partition& p, std::size_t n) {
    if (p.labels.size() != n) return false;
    if (std::ranges::any_of(p.labels, [&](auto c) { return c >= p.k; })) return false;
    return p.is_canonical();
}

Partition random_connected_partition(const Graph& g, Rng& rng, std::size_t max_clusters) {
    const auto n = g.order();
    if (n == 0) return {};
    const auto cap = max_clusters == 0 ? n : std::min(max_clusters, n);
    const auto k = 1 + rng.below(cap);

    constexpr auto unassigned = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> labels(n, unassigned);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {  // partial Fisher-Yates picks the seeds
        std::swap(order[i], order[i + rng.below(n - i)]);
        labels[order[i]] = i;
    }
    std::size_t next_label = k;
    std::size_t remaining = n - k;
    while (remaining > 0) {
        // (vertex, neighbor cluster) pairs along edges leaving the assigned set
        std::vector<std::pair<std::size_t, std::size_t>> frontier;
        for (const auto& e : g.edges()) {
            if (labels[e.u] == unassigned && labels[e.v] != unassigned) frontier.emplace_back(e.u, labels[e.v]);
            if (labels[e.v] == unassigned && labels[e.u] != unassigned) frontier.emplace_back(e.v, labels[e.u]);
        }
        if (frontier.empty()) {
            // unreachable component: start a new cluster there
            std::vector<std::size_t> free;
            for (std::size_t v = 0; v < n; ++v) {
                if (labels[v] == unassigned) free.push_back(v);
            }
            labels[free[rng.below(free.size())]] = next_label++;
        } else {
            const auto [v, c] = frontier[rng.below(frontier.size())];
            labels[v] = c;
        }
        --remaining;
    }
    return canonicalize(labels);
}

Partition random_partition(std::size_t n, Rng& rng) {
    const auto k = 1 + rng.below(std::max<std::size_t>(n, 1));
    std::vector<std::size_t> labels(n);
    for (auto& l : labels) l = rng.below(k);
    return canonicalize(labels);
}

namespace {

constexpr std::size_t max_counterexamples = 5;

class Suite {
public:
    explicit Suite(std::string name) { result_.name = std::move(name); }

    void check(bool ok, const std::function<std::string()>& describe) {
        ++result_.cases;
        if (ok) return;
        result_.passed = false;
        if (result_.counterexamples.size() < max_counterexamples) result_.counterexamples.push_back(describe());
    }

    SuiteResult skip(std::string why) {
        result_.skipped = true;
        result_.counterexamples.push_back(std::move(why));
        return result_;
    }

    SuiteResult done() { return result_; }

private:
    SuiteResult result_;
};

BitVector random_bits(std::size_t size, Rng& rng) {
    BitVector b(size);
    for (std::size_t i = 0; i < size; ++i) b[i] = rng.coin();
    return b;
}

EdgeVector subset_boundary(const Graph& g, const BitVector& subset) {
    EdgeVector out(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        const auto& e = g.edge(k);
        const bool a = e.u < subset.size() && subset.test(e.u);
        const bool b = e.v < subset.size() && subset.test(e.v);
        if (a != b) out.set(k);
    }
    return out;
}

SuiteResult worked_example_suite(const Graph& g) {
    Suite s("worked-example");
    if (!has_reference_shape(g)) return s.skip("graph does not have the reference shape");
    const auto expected = std::string(worked_example::partition);
    auto decode_literal = [&](const EncodingScheme& scheme, std::string_view literal) {
        return format_partition(decode(scheme, parse_chromosome(scheme, literal, g), g));
    };
    struct Case {
        const char* label;
        EncodingScheme scheme;
        std::string_view literal;
    };
    for (const auto& c : {Case{"fractional", EncodingScheme::fractional(), worked_example::fractional},
                          Case{"edge", EncodingScheme::edge(), worked_example::edge},
                          Case{"cut", EncodingScheme::cut(worked_example::cut_max_cuts), worked_example::cut},
                          Case{"median assignment", EncodingScheme::pmedian(), worked_example::pmedian}}) {
        const auto got = decode_literal(c.scheme, c.literal);
        s.check(got == expected, [&] {
            return std::string(c.label) + " chromosome " + std::string(c.literal) + " decodes to " + got +
                   ", expected " + expected;
        });
    }
    const auto basis = build_basis(g);
    const auto chain = std::get<CutChromosome>(
        parse_chromosome(EncodingScheme::cut(worked_example::cut_max_cuts), worked_example::cut, g));
    const auto first = format_edge_set(combine_cuts(basis, chain.group(0, g.order() - 1)));
    const auto second = format_edge_set(combine_cuts(basis, chain.group(1, g.order() - 1)));
    s.check(first == worked_example::first_cut, [&] { return "first cut renders " + first; });
    s.check(second == worked_example::second_cut, [&] { return "second cut renders " + second; });
    return s.done();
}

SuiteResult xor_boundary_suite(const Graph& g, const SelftestOptions& opt, Rng& rng) {
    Suite s("cut-space/xor-equals-boundary");
    if (g.order() < 2) return s.skip("needs at least two vertices");
    const auto basis = build_basis(g);
    const auto bits = g.order() - 1;
    auto one = [&](const BitVector& sel) {
        s.check(combine_cuts(basis, sel) == subset_boundary(g, sel),
                [&] { return "selector " + format_bits(sel); });
    };
    if (bits <= 16) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) one(BitVector(bits, mask));
    } else {
        for (std::size_t i = 0; i < opt.fuzz; ++i) one(random_bits(bits, rng));
    }
    return s.done();
}

SuiteResult linearity_suite(const Graph& g, const SelftestOptions& opt, Rng& rng) {
    Suite s("cut-space/linearity");
    if (g.order() < 2) return s.skip("needs at least two vertices");
    const auto basis = build_basis(g);
    for (std::size_t i = 0; i < opt.fuzz; ++i) {
        const auto a = random_bits(g.order() - 1, rng);
        const auto b = random_bits(g.order() - 1, rng);
        s.check(combine_cuts(basis, a ^ b) == (combine_cuts(basis, a) ^ combine_cuts(basis, b)),
                [&] { return "selectors " + format_bits(a) + ", " + format_bits(b); });
    }
    return s.done();
}

SuiteResult all_nodal_suite(const Graph& g) {
    Suite s("cut-space/all-nodal-cuts-cancel");
    EdgeVector acc(g.size());
    for (std::size_t v = 0; v < g.order(); ++v) acc ^= nodal_cut(g, v);
    s.check(acc.none(), [&] { return "residual " + format_edge_set(acc); });
    return s.done();
}

SuiteResult boundary_union_suite(const Graph& g, const SelftestOptions& opt, Rng& rng) {
    Suite s("cut-space/boundary-union");
    for (std::size_t i = 0; i < opt.fuzz; ++i) {
        const auto p = random_partition(g.order(), rng);
        EdgeVector acc(g.size());
        for (std::size_t c = 0; c < p.k; ++c) acc |= boundary(g, p, c);
        s.check(acc == inter_edges(g, p), [&] { return "partition " + format_partition(p); });
    }
    return s.done();
}

SuiteResult roundtrip_suite(const Graph& g, SchemeKind kind, const SelftestOptions& opt, Rng& rng) {
    Suite s("encodings/roundtrip-" + std::string(kind_name(kind)));
    if (kind == SchemeKind::cut && g.order() < 2) return s.skip("needs at least two vertices");
    for (std::size_t i = 0; i < opt.fuzz; ++i) {
        const auto p = random_connected_partition(g, rng);
        EncodingScheme scheme{kind, 0};
        if (kind == SchemeKind::cut) {
            // any K with k <= K + 1
            const auto lo = std::max<std::size_t>(p.k > 0 ? p.k - 1 : 0, 1);
            const auto hi = std::max(lo, g.order() - 1);
            scheme = EncodingScheme::cut(lo + rng.below(hi - lo + 1));
        }
        const auto back = decode(scheme, encode(scheme, p, g), g);
        if (kind == SchemeKind::pmedian) {
            s.check(is_valid_partition(back, g.order()), [&] { return "partition " + format_partition(p); });
        } else {
            s.check(back == p, [&] {
                return "partition " + format_partition(p) + " came back as " + format_partition(back) + " via " +
                       scheme_name(scheme);
            });
        }
    }
    return s.done();
}

SuiteResult repair_suite(const Graph& g, const SelftestOptions& opt, Rng& rng) {
    Suite s("encodings/repair-monotonicity");
    for (std::size_t i = 0; i < opt.fuzz; ++i) {
        const EdgeChromosome c{random_bits(g.size(), rng)};
        const auto repaired = edge_encode(edge_decode(c, g), g).bits;
        s.check(repaired.is_subset_of(c.bits), [&] { return "edge bits " + format_bits(c.bits); });
    }
    return s.done();
}

SuiteResult totality_suite(const Graph& g, const SelftestOptions& opt, Rng& rng) {
    Suite s("encodings/decode-totality");
    std::vector<EncodingScheme> schemes{EncodingScheme::fractional(), EncodingScheme::edge(), EncodingScheme::pmedian()};
    if (g.order() >= 2) {
        schemes.push_back(EncodingScheme::cut(1));
        schemes.push_back(EncodingScheme::cut(3));
    }
    for (const auto& scheme : schemes) {
        const Codec codec(scheme, g);
        for (std::size_t i = 0; i < opt.fuzz; ++i) {
            const auto c = codec.random(rng);
            const auto p = codec.decode(c);
            s.check(is_valid_partition(p, g.order()),
                    [&] { return scheme_name(scheme) + " chromosome " + format_chromosome(c, g); });
        }
    }
    return s.done();
}

SuiteResult blindness_suite(const Graph& g) {
    Suite s("encodings/blindness-witness");
    if (g.order() < 3) return s.skip("needs at least three vertices");
    const auto singletons = Partition::singletons(g.order());
    bool refused = false;
    try {
        (void)cut_encode(singletons, g, 1);
    } catch (const CapacityExceeded&) {
        refused = true;
    }
    s.check(refused, [] { return std::string("cut:1 encoded the all-singletons partition"); });
    const auto edge = edge_encode(singletons, g);
    s.check(edge.bits.count() == g.size(), [] { return std::string("edge encoding of singletons is not all-one"); });
    return s.done();
}

}  // namespace

std::vector<SuiteResult> run_selftest(const Graph& g, const SelftestOptions& options) {
    Rng rng(options.seed);
    std::vector<SuiteResult> out;
    out.push_back(worked_example_suite(g));
    out.push_back(xor_boundary_suite(g, options, rng));
    out.push_back(linearity_suite(g, options, rng));
    out.push_back(all_nodal_suite(g));
    out.push_back(boundary_union_suite(g, options, rng));
    for (auto kind : {SchemeKind::fractional, SchemeKind::edge, SchemeKind::cut, SchemeKind::pmedian}) {
        out.push_back(roundtrip_suite(g, kind, options, rng));
    }
    out.push_back(repair_suite(g, options, rng));
    out.push_back(totality_suite(g, options, rng));
    out.push_back(blindness_suite(g));
    return out;
}

std::string format_selftest_report(const std::vector<SuiteResult>& results) {
    std::string out;
    for (const auto& r : results) {
        const char* status = r.skipped ? "SKIP" : r.passed ? "PASS" : "FAIL";
        out += std::string(status) + "  " + r.name;
        if (!r.skipped) out += " (" + std::to_string(r.cases) + (r.cases == 1 ? " case)" : " cases)");
        out += "\n";
        for (const auto& c : r.counterexamples) out += (r.skipped ? "      " : "      counterexample: ") + c + "\n";
    }
    return out;
}

}  // namespace hpga
