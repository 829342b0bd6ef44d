#ifndef HPGA_ENCODINGS_HPP
#define HPGA_ENCODINGS_HPP

#include "hpga/cut_space.hpp"
#include "hpga/graph.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace hpga {

class Rng;

/// A partition the target scheme cannot express (cut scheme with too few cuts).
class CapacityExceeded : public std::runtime_error {
public:
    CapacityExceeded(std::size_t clusters, std::size_t max_cuts)
        : std::runtime_error("partition with " + std::to_string(clusters) +
                             " clusters needs more than " + std::to_string(max_cuts) + " cuts"),
          clusters_(clusters) {}

    std::size_t clusters() const noexcept { return clusters_; }

private:
    std::size_t clusters_;
};

enum class SchemeKind { fractional, edge, cut, pmedian };

struct EncodingScheme {
    SchemeKind kind = SchemeKind::fractional;
    std::size_t max_cuts = 0;  // cut scheme only

    static EncodingScheme fractional() { return {SchemeKind::fractional, 0}; }
    static EncodingScheme edge() { return {SchemeKind::edge, 0}; }
    static EncodingScheme cut(std::size_t max_cuts);
    static EncodingScheme pmedian() { return {SchemeKind::pmedian, 0}; }

    std::size_t chromosome_length(const Graph& g) const;

    friend bool operator==(const EncodingScheme&, const EncodingScheme&) = default;
};

/// "fractional", "edge", "pmedian" or "cut:K".
EncodingScheme parse_scheme(std::string_view name);
std::string scheme_name(const EncodingScheme& s);
/// Bare kind name without parameters ("cut" for cut:K).
std::string_view kind_name(SchemeKind kind);

// Chromosomes. Vertex i / edge k of the graph is position i / k.

/// One allele per vertex in [0,1], then the cluster-count allele.
struct FractionalChromosome {
    std::vector<double> alleles;
    friend bool operator==(const FractionalChromosome&, const FractionalChromosome&) = default;
};

/// Bit k set means edge k is inter-cluster.
struct EdgeChromosome {
    BitVector bits;
    friend bool operator==(const EdgeChromosome&, const EdgeChromosome&) = default;
};

/// max_cuts consecutive selector groups of n-1 bits over the nodal basis.
struct CutChromosome {
    BitVector bits;
    std::size_t max_cuts = 1;

    BitVector group(std::size_t j, std::size_t group_size) const;
    friend bool operator==(const CutChromosome&, const CutChromosome&) = default;
};

/// Bit i set means vertex i is a median.
struct MedianChromosome {
    BitVector bits;
    friend bool operator==(const MedianChromosome&, const MedianChromosome&) = default;
};

using Chromosome = std::variant<FractionalChromosome, EdgeChromosome, CutChromosome, MedianChromosome>;

Partition frac_decode(const FractionalChromosome& c, const Graph& g);
FractionalChromosome frac_encode(const Partition& p, const Graph& g);

Partition edge_decode(const EdgeChromosome& c, const Graph& g);
EdgeChromosome edge_encode(const Partition& p, const Graph& g);

Partition cut_decode(const CutChromosome& c, const Graph& g);
Partition cut_decode(const CutChromosome& c, const Graph& g, const NodalBasis& basis);
/// Throws CapacityExceeded when p has more than max_cuts + 1 clusters.
CutChromosome cut_encode(const Partition& p, const Graph& g, std::size_t max_cuts);

Partition pmedian_decode(const MedianChromosome& c, const Graph& g);
MedianChromosome pmedian_encode(const Partition& p, const Graph& g);

/// Scheme-dispatching codec with the per-graph state the decoders need
/// (the nodal basis). Cheap to copy; shared read-only between islands.
class Codec {
public:
    Codec(EncodingScheme scheme, const Graph& g);

    const EncodingScheme& scheme() const noexcept { return scheme_; }
    const Graph& graph() const noexcept { return *graph_; }
    std::size_t length() const noexcept { return length_; }

    Partition decode(const Chromosome& c) const;
    /// Throws CapacityExceeded for partitions the scheme cannot represent.
    Chromosome encode(const Partition& p) const;

    Chromosome random(Rng& rng) const;
    std::pair<Chromosome, Chromosome> crossover(const Chromosome& a, const Chromosome& b, Rng& rng) const;
    Chromosome mutate(const Chromosome& a, double rate, Rng& rng) const;

    /// Checks the variant alternative and length against this codec.
    bool accepts(const Chromosome& c) const;

private:
    EncodingScheme scheme_;
    const Graph* graph_;
    std::size_t length_;
    NodalBasis basis_;
};

Partition decode(const EncodingScheme& s, const Chromosome& c, const Graph& g);
Chromosome encode(const EncodingScheme& s, const Partition& p, const Graph& g);
Chromosome random_chromosome(const EncodingScheme& s, const Graph& g, Rng& rng);
std::pair<Chromosome, Chromosome> crossover(const EncodingScheme& s, const Chromosome& a,
                                            const Chromosome& b, Rng& rng);
Chromosome mutate(const EncodingScheme& s, const Chromosome& a, double rate, Rng& rng);

/// CLI literal forms: `0.34,0.67,...` for fractional, `110010111` for the
/// binary schemes (cut groups may be separated by `|`).
Chromosome parse_chromosome(const EncodingScheme& s, std::string_view literal, const Graph& g);
std::string format_chromosome(const Chromosome& c, const Graph& g);

}  // namespace hpga

#endif  // HPGA_ENCODINGS_HPP
