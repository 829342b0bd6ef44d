#ifndef HPGA_SELFTEST_HPP
#define HPGA_SELFTEST_HPP

#include "hpga/graph.hpp"
#include "hpga/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hpga {

/// The six-vertex, nine-edge three-cluster example graph used throughout the
/// tests and by `hpga selftest`.
Graph reference_graph();

namespace worked_example {
inline constexpr std::string_view fractional = "0.34,0.67,0.67,0.67,1.00,0.34,0.50";
inline constexpr std::string_view edge = "110010111";
inline constexpr std::string_view cut = "00001|01110|00000";
inline constexpr std::size_t cut_max_cuts = 3;
inline constexpr std::string_view pmedian = "001011";
inline constexpr std::string_view partition = "3;1,2,2,2,3,1";
inline constexpr std::string_view first_cut = "{e2,e5,e8,e9}";
inline constexpr std::string_view second_cut = "{e1,e5,e7,e8}";
}  // namespace worked_example

/// Same vertex count and edge endpoints as reference_graph(); weights may differ.
bool has_reference_shape(const Graph& g);

/// Labels cover 0..k-1, every label used, canonical order.
bool is_valid_partition(const Partition& p, std::size_t n);

/// Random partition whose clusters each induce a connected subgraph: k seeds
/// grown along random edges. `max_clusters` caps k (0 = no cap).
Partition random_connected_partition(const Graph& g, Rng& rng, std::size_t max_clusters = 0);

/// Arbitrary (possibly disconnected-cluster) partition, canonicalized.
Partition random_partition(std::size_t n, Rng& rng);

struct SuiteResult {
    std::string name;
    bool passed = true;
    bool skipped = false;
    std::size_t cases = 0;
    std::vector<std::string> counterexamples;  // capped
};

struct SelftestOptions {
    std::size_t fuzz = 1000;
    std::uint64_t seed = 1;
};

/// Property suites for the cut-space algebra and the four encodings on `g`,
/// plus the worked-example consistency check when `g` has the reference shape.
std::vector<SuiteResult> run_selftest(const Graph& g, const SelftestOptions& options = {});

std::string format_selftest_report(const std::vector<SuiteResult>& results);

}  // namespace hpga

#endif  // HPGA_SELFTEST_HPP
