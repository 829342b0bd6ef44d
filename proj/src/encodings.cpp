#include "hpga/encodings.hpp"

#include "hpga/rng.hpp"
#include "text.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

namespace hpga {

namespace {

std::size_t round_half_up_clamped(double x, std::size_t hi) {
    const double r = std::floor(x + 0.5);
    if (!(r >= 1.0)) return 1;  // also catches NaN
    if (r >= static_cast<double>(hi)) return hi;
    return static_cast<std::size_t>(r);
}

template <typename... F>
struct overloaded : F... {
    using F::operator()...;
};
template <typename... F>
overloaded(F...) -> overloaded<F...>;

void require_length(std::size_t actual, std::size_t expected, const char* what) {
    if (actual != expected) {
        throw std::invalid_argument(std::string(what) + " chromosome has length " + std::to_string(actual) +
                                    ", expected " + std::to_string(expected));
    }
}

}  // namespace

EncodingScheme EncodingScheme::cut(std::size_t max_cuts) {
    if (max_cuts == 0) throw std::invalid_argument("cut scheme needs max_cuts >= 1");
    return {SchemeKind::cut, max_cuts};
}

std::size_t EncodingScheme::chromosome_length(const Graph& g) const {
    switch (kind) {
        case SchemeKind::fractional: return g.order() + 1;
        case SchemeKind::edge: return g.size();
        case SchemeKind::cut: return max_cuts * (g.order() - 1);
        case SchemeKind::pmedian: return g.order();
    }
    return 0;
}

std::string_view kind_name(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::fractional: return "fractional";
        case SchemeKind::edge: return "edge";
        case SchemeKind::cut: return "cut";
        case SchemeKind::pmedian: return "pmedian";
    }
    return "?";
}

std::string scheme_name(const EncodingScheme& s) {
    std::string name(kind_name(s.kind));
    if (s.kind == SchemeKind::cut) name += ":" + std::to_string(s.max_cuts);
    return name;
}

EncodingScheme parse_scheme(std::string_view name) {
    name = detail::trim(name);
    if (name == "fractional") return EncodingScheme::fractional();
    if (name == "edge") return EncodingScheme::edge();
    if (name == "pmedian") return EncodingScheme::pmedian();
    if (name.starts_with("cut:")) {
        const auto arg = name.substr(4);
        std::size_t k = 0;
        auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), k);
        if (ec == std::errc{} && ptr == arg.data() + arg.size() && k >= 1) return EncodingScheme::cut(k);
        throw std::invalid_argument("bad cut count in scheme `" + std::string(name) + "`");
    }
    throw std::invalid_argument("unknown scheme `" + std::string(name) +
                                "` (expected fractional, edge, cut:K or pmedian)");
}

// --- fractional -------------------------------------------------------------

Partition frac_decode(const FractionalChromosome& c, const Graph& g) {
    const auto n = g.order();
    require_length(c.alleles.size(), n + 1, "fractional");
    const auto k = round_half_up_clamped(c.alleles[n] * static_cast<double>(n), n);
    std::vector<std::size_t> labels(n);
    for (std::size_t v = 0; v < n; ++v) {
        labels[v] = round_half_up_clamped(c.alleles[v] * static_cast<double>(k), k) - 1;
    }
    return canonicalize(labels);
}

FractionalChromosome frac_encode(const Partition& p, const Graph& g) {
    const auto n = g.order();
    FractionalChromosome c;
    c.alleles.reserve(n + 1);
    const auto k = static_cast<double>(p.k);
    for (auto label : p.labels) c.alleles.push_back(static_cast<double>(label + 1) / k);
    c.alleles.push_back(k / static_cast<double>(n));
    return c;
}

// --- edge -------------------------------------------------------------------

Partition edge_decode(const EdgeChromosome& c, const Graph& g) {
    require_length(c.bits.size(), g.size(), "edge");
    std::vector<std::size_t> intra;
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (!c.bits.test(k)) intra.push_back(k);
    }
    return components_from_intra(g, intra);
}

EdgeChromosome edge_encode(const Partition& p, const Graph& g) {
    return {inter_edges(g, p)};
}

// --- cut --------------------------------------------------------------------

BitVector CutChromosome::group(std::size_t j, std::size_t group_size) const {
    BitVector sel(group_size);
    for (std::size_t i = 0; i < group_size; ++i) sel[i] = bits[j * group_size + i];
    return sel;
}

Partition cut_decode(const CutChromosome& c, const Graph& g) {
    if (g.order() < 2) {
        require_length(c.bits.size(), 0, "cut");
        return Partition::single(g.order());
    }
    return cut_decode(c, g, build_basis(g));
}

Partition cut_decode(const CutChromosome& c, const Graph& g, const NodalBasis& basis) {
    const auto group_size = basis.rows.size();
    require_length(c.bits.size(), c.max_cuts * group_size, "cut");
    EdgeVector removed(g.size());
    for (std::size_t j = 0; j < c.max_cuts; ++j) removed |= combine_cuts(basis, c.group(j, group_size));
    std::vector<std::size_t> intra;
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (!removed.test(k)) intra.push_back(k);
    }
    return components_from_intra(g, intra);
}

CutChromosome cut_encode(const Partition& p, const Graph& g, std::size_t max_cuts) {
    if (max_cuts == 0) throw std::invalid_argument("cut scheme needs max_cuts >= 1");
    const auto n = g.order();
    if (p.k > max_cuts + 1) throw CapacityExceeded(p.k, max_cuts);
    const auto group_size = n >= 1 ? n - 1 : 0;
    CutChromosome c{BitVector(max_cuts * group_size), max_cuts};
    if (n < 2) return c;
    const auto last_cluster = p.labels[n - 1];
    std::size_t j = 0;
    for (std::size_t cluster = 0; cluster < p.k; ++cluster) {
        if (cluster == last_cluster) continue;
        for (std::size_t v = 0; v + 1 < n; ++v) {
            if (p.labels[v] == cluster) c.bits.set(j * group_size + v);
        }
        ++j;
    }
    return c;
}

// --- p-median ---------------------------------------------------------------

Partition pmedian_decode(const MedianChromosome& c, const Graph& g) {
    const auto n = g.order();
    require_length(c.bits.size(), n, "pmedian");
    if (c.bits.none()) return Partition::single(n);

    constexpr auto unassigned = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> labels(n, unassigned);
    std::size_t k = 0;
    for (std::size_t v = 0; v < n; ++v) {
        if (c.bits.test(v)) labels[v] = k++;
    }

    // Direct link to a median: heaviest edge wins, ties to the smaller median.
    std::vector<std::size_t> next = labels;
    for (std::size_t v = 0; v < n; ++v) {
        if (labels[v] != unassigned) continue;
        double best_w = -1.0;
        for (auto e : g.incident(v)) {
            const auto& edge = g.edge(e);
            const auto other = edge.u == v ? edge.v : edge.u;
            if (!c.bits.test(other)) continue;
            const auto cluster = labels[other];
            if (edge.w > best_w || (edge.w == best_w && cluster < next[v])) {
                best_w = edge.w;
                next[v] = cluster;
            }
        }
    }
    labels = next;

    // Attach the rest by total weight into already assigned clusters. Each
    // pass reads the assignment from the previous one, so the result does
    // not depend on vertex order within a pass.
    std::vector<double> pull(k);
    for (bool changed = true; changed;) {
        changed = false;
        next = labels;
        for (std::size_t v = 0; v < n; ++v) {
            if (labels[v] != unassigned) continue;
            std::fill(pull.begin(), pull.end(), -1.0);
            bool linked = false;
            for (auto e : g.incident(v)) {
                const auto& edge = g.edge(e);
                const auto other = edge.u == v ? edge.v : edge.u;
                const auto cluster = labels[other];
                if (cluster == unassigned) continue;
                pull[cluster] = std::max(pull[cluster], 0.0) + edge.w;
                linked = true;
            }
            if (!linked) continue;
            next[v] = static_cast<std::size_t>(std::max_element(pull.begin(), pull.end()) - pull.begin());
            changed = true;
        }
        labels = next;
    }

    for (auto& label : labels) {
        if (label == unassigned) label = 0;
    }
    return canonicalize(labels);
}

MedianChromosome pmedian_encode(const Partition& p, const Graph& g) {
    const auto n = g.order();
    std::vector<double> intra(n, 0.0);
    for (const auto& e : g.edges()) {
        if (p.labels[e.u] == p.labels[e.v]) {
            intra[e.u] += e.w;
            intra[e.v] += e.w;
        }
    }
    constexpr auto none = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> median(p.k, none);
    for (std::size_t v = 0; v < n; ++v) {
        auto& m = median[p.labels[v]];
        if (m == none || intra[v] > intra[m]) m = v;
    }
    MedianChromosome c{BitVector(n)};
    for (auto m : median) c.bits.set(m);
    return c;
}

// --- uniform contract ---------------------------------------------------------

Codec::Codec(EncodingScheme scheme, const Graph& g)
    : scheme_(scheme), graph_(&g), length_(scheme.chromosome_length(g)) {
    if (scheme_.kind == SchemeKind::cut && g.order() >= 2) basis_ = build_basis(g);
}

bool Codec::accepts(const Chromosome& c) const {
    return std::visit(overloaded{
                          [&](const FractionalChromosome& x) {
                              return scheme_.kind == SchemeKind::fractional && x.alleles.size() == length_;
                          },
                          [&](const EdgeChromosome& x) {
                              return scheme_.kind == SchemeKind::edge && x.bits.size() == length_;
                          },
                          [&](const CutChromosome& x) {
                              return scheme_.kind == SchemeKind::cut && x.max_cuts == scheme_.max_cuts &&
                                     x.bits.size() == length_;
                          },
                          [&](const MedianChromosome& x) {
                              return scheme_.kind == SchemeKind::pmedian && x.bits.size() == length_;
                          },
                      },
                      c);
}

Partition Codec::decode(const Chromosome& c) const {
    if (!accepts(c)) throw std::invalid_argument("chromosome does not match scheme " + scheme_name(scheme_));
    const auto& g = *graph_;
    return std::visit(overloaded{
                          [&](const FractionalChromosome& x) { return frac_decode(x, g); },
                          [&](const EdgeChromosome& x) { return edge_decode(x, g); },
                          [&](const CutChromosome& x) {
                              return g.order() < 2 ? Partition::single(g.order()) : cut_decode(x, g, basis_);
                          },
                          [&](const MedianChromosome& x) { return pmedian_decode(x, g); },
                      },
                      c);
}

Chromosome Codec::encode(const Partition& p) const {
    const auto& g = *graph_;
    switch (scheme_.kind) {
        case SchemeKind::fractional: return frac_encode(p, g);
        case SchemeKind::edge: return edge_encode(p, g);
        case SchemeKind::cut: return cut_encode(p, g, scheme_.max_cuts);
        case SchemeKind::pmedian: return pmedian_encode(p, g);
    }
    throw std::logic_error("unhandled scheme");
}

namespace {

BitVector random_bits(std::size_t size, Rng& rng) {
    BitVector bits(size);
    for (std::size_t i = 0; i < size; ++i) bits[i] = rng.coin();
    return bits;
}

// Swap each position with probability 1/2.
void uniform_swap(BitVector& a, BitVector& b, Rng& rng) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (rng.coin()) {
            const bool t = a[i];
            a[i] = b[i];
            b[i] = t;
        }
    }
}

void flip_bits(BitVector& bits, double rate, Rng& rng) {
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (rng.bernoulli(rate)) bits.flip(i);
    }
}

}  // namespace

Chromosome Codec::random(Rng& rng) const {
    switch (scheme_.kind) {
        case SchemeKind::fractional: {
            FractionalChromosome c;
            c.alleles.resize(length_);
            for (auto& a : c.alleles) a = rng.uniform();
            return c;
        }
        case SchemeKind::edge: return EdgeChromosome{random_bits(length_, rng)};
        case SchemeKind::cut: return CutChromosome{random_bits(length_, rng), scheme_.max_cuts};
        case SchemeKind::pmedian: {
            auto bits = random_bits(length_, rng);
            if (bits.none()) bits = random_bits(length_, rng);
            return MedianChromosome{std::move(bits)};
        }
    }
    throw std::logic_error("unhandled scheme");
}

namespace {

bool matches_kind(SchemeKind kind, const Chromosome& c) {
    return c.index() == static_cast<std::size_t>(kind);
}

std::size_t chromosome_size(const Chromosome& c) {
    return std::visit(overloaded{
                          [](const FractionalChromosome& x) { return x.alleles.size(); },
                          [](const auto& x) { return x.bits.size(); },
                      },
                      c);
}

std::pair<Chromosome, Chromosome> uniform_crossover(const Chromosome& a, const Chromosome& b, Rng& rng) {
    if (a.index() != b.index()) throw std::invalid_argument("crossover parents use different schemes");
    require_length(chromosome_size(b), chromosome_size(a), "crossover parent");
    Chromosome x = a;
    Chromosome y = b;
    std::visit(overloaded{
                   [&](FractionalChromosome& p) {
                       auto& q = std::get<FractionalChromosome>(y);
                       for (std::size_t i = 0; i < p.alleles.size(); ++i) {
                           if (rng.coin()) std::swap(p.alleles[i], q.alleles[i]);
                       }
                   },
                   [&](EdgeChromosome& p) { uniform_swap(p.bits, std::get<EdgeChromosome>(y).bits, rng); },
                   [&](CutChromosome& p) { uniform_swap(p.bits, std::get<CutChromosome>(y).bits, rng); },
                   [&](MedianChromosome& p) { uniform_swap(p.bits, std::get<MedianChromosome>(y).bits, rng); },
               },
               x);
    return {std::move(x), std::move(y)};
}

// Binary schemes flip, fractional resamples.
Chromosome point_mutation(const Chromosome& a, double rate, Rng& rng) {
    if (!(rate >= 0.0 && rate <= 1.0)) throw std::invalid_argument("mutation rate must lie in [0, 1]");
    Chromosome out = a;
    std::visit(overloaded{
                   [&](FractionalChromosome& c) {
                       for (auto& allele : c.alleles) {
                           if (rng.bernoulli(rate)) allele = rng.uniform();
                       }
                   },
                   [&](auto& c) { flip_bits(c.bits, rate, rng); },
               },
               out);
    return out;
}

}  // namespace

std::pair<Chromosome, Chromosome> Codec::crossover(const Chromosome& a, const Chromosome& b, Rng& rng) const {
    if (!accepts(a) || !accepts(b)) {
        throw std::invalid_argument("crossover parents do not match scheme " + scheme_name(scheme_));
    }
    return uniform_crossover(a, b, rng);
}

Chromosome Codec::mutate(const Chromosome& a, double rate, Rng& rng) const {
    if (!accepts(a)) throw std::invalid_argument("chromosome does not match scheme " + scheme_name(scheme_));
    return point_mutation(a, rate, rng);
}

Partition decode(const EncodingScheme& s, const Chromosome& c, const Graph& g) {
    return Codec(s, g).decode(c);
}

Chromosome encode(const EncodingScheme& s, const Partition& p, const Graph& g) {
    return Codec(s, g).encode(p);
}

Chromosome random_chromosome(const EncodingScheme& s, const Graph& g, Rng& rng) {
    return Codec(s, g).random(rng);
}

std::pair<Chromosome, Chromosome> crossover(const EncodingScheme& s, const Chromosome& a, const Chromosome& b,
                                            Rng& rng) {
    if (!matches_kind(s.kind, a)) throw std::invalid_argument("parent does not match scheme " + scheme_name(s));
    return uniform_crossover(a, b, rng);
}

Chromosome mutate(const EncodingScheme& s, const Chromosome& a, double rate, Rng& rng) {
    if (!matches_kind(s.kind, a)) throw std::invalid_argument("chromosome does not match scheme " + scheme_name(s));
    return point_mutation(a, rate, rng);
}

// --- literals -----------------------------------------------------------------

Chromosome parse_chromosome(const EncodingScheme& s, std::string_view literal, const Graph& g) {
    literal = detail::trim(literal);
    const auto expected = s.chromosome_length(g);
    if (s.kind == SchemeKind::fractional) {
        FractionalChromosome c;
        for (auto tok : detail::split(literal, ',')) {
            tok = detail::trim(tok);
            double x = 0.0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
            if (ec != std::errc{} || ptr != tok.data() + tok.size() || !(x >= 0.0 && x <= 1.0)) {
                throw std::invalid_argument("bad fractional allele `" + std::string(tok) + "`");
            }
            c.alleles.push_back(x);
        }
        require_length(c.alleles.size(), expected, "fractional");
        return c;
    }
    auto bits = parse_bits(literal);
    switch (s.kind) {
        case SchemeKind::edge: require_length(bits.size(), expected, "edge"); return EdgeChromosome{bits};
        case SchemeKind::cut:
            require_length(bits.size(), expected, "cut");
            return CutChromosome{bits, s.max_cuts};
        case SchemeKind::pmedian:
            require_length(bits.size(), expected, "pmedian");
            return MedianChromosome{bits};
        default: break;
    }
    throw std::logic_error("unhandled scheme");
}

std::string format_chromosome(const Chromosome& c, const Graph& g) {
    return std::visit(overloaded{
                          [](const FractionalChromosome& x) {
                              std::string out;
                              for (std::size_t i = 0; i < x.alleles.size(); ++i) {
                                  if (i) out += ",";
                                  out += detail::format_number(x.alleles[i]);
                              }
                              return out;
                          },
                          [](const EdgeChromosome& x) { return format_bits(x.bits); },
                          [&](const CutChromosome& x) {
                              const auto group = g.order() - 1;
                              const auto flat = format_bits(x.bits);
                              std::string out;
                              for (std::size_t j = 0; j < x.max_cuts; ++j) {
                                  if (j) out += "|";
                                  out += flat.substr(j * group, group);
                              }
                              return out;
                          },
                          [](const MedianChromosome& x) { return format_bits(x.bits); },
                      },
                      c);
}

}  // namespace hpga
