#include "hpga/config.hpp"

#include "text.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <set>

namespace hpga {

namespace {

std::size_t to_count(std::string_view v, std::size_t line, std::string_view key) {
    std::size_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        throw ParseError(line, "`" + std::string(key) + "` expects a non-negative integer, got `" + std::string(v) + "`");
    }
    return out;
}

std::size_t to_positive(std::string_view v, std::size_t line, std::string_view key) {
    const auto out = to_count(v, line, key);
    if (out == 0) throw ParseError(line, "`" + std::string(key) + "` must be positive");
    return out;
}

double to_real(std::string_view v, std::size_t line, std::string_view key) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
        throw ParseError(line, "`" + std::string(key) + "` expects a number, got `" + std::string(v) + "`");
    }
    return out;
}

double to_probability(std::string_view v, std::size_t line, std::string_view key) {
    const auto out = to_real(v, line, key);
    if (out < 0.0 || out > 1.0) throw ParseError(line, "`" + std::string(key) + "` must lie in [0, 1]");
    return out;
}

struct PendingIsland {
    std::size_t header_line = 0;
    std::optional<SchemeKind> kind;
    std::optional<std::size_t> max_cuts;
    std::size_t max_cuts_line = 0;
    std::size_t size = 30;
    std::set<std::string> keys;
};

struct PendingLink {
    MigrationLink link;
    std::size_t line;
};

}  // namespace

EngineConfig parse_config(std::string_view text) {
    EngineConfig cfg;
    enum class Section { none, engine, island, topology } section = Section::none;
    std::map<std::size_t, PendingIsland> islands;
    PendingIsland* current = nullptr;
    std::set<std::string> engine_keys;
    std::set<std::string> seen_sections;
    std::vector<PendingLink> links;
    bool have_topology = false;

    detail::for_each_line(text, [&](std::size_t line, std::string_view raw) {
        auto s = detail::trim(raw);
        if (s.empty() || s.front() == '#') return;

        if (s.front() == '[') {
            if (s.back() != ']') throw ParseError(line, "unterminated section header");
            const auto name = std::string(detail::trim(s.substr(1, s.size() - 2)));
            if (!seen_sections.insert(name).second) throw ParseError(line, "duplicate section [" + name + "]");
            if (name == "engine") {
                section = Section::engine;
            } else if (name == "topology") {
                section = Section::topology;
                have_topology = true;
            } else if (name.starts_with("island.")) {
                const auto id = to_count(std::string_view(name).substr(7), line, "island id");
                section = Section::island;
                current = &islands[id];
                current->header_line = line;
            } else {
                throw ParseError(line, "unknown section [" + name + "]");
            }
            return;
        }

        if (section == Section::topology) {
            const auto tok = detail::split_ws(s);
            if (tok.size() != 3) throw ParseError(line, "topology lines are `src dst count`");
            MigrationLink l{to_count(tok[0], line, "src"), to_count(tok[1], line, "dst"),
                            to_count(tok[2], line, "count")};
            if (l.src == l.dst) throw ParseError(line, "self-link on island " + std::to_string(l.src));
            if (l.count == 0) throw ParseError(line, "migrant count must be at least 1");
            links.push_back({l, line});
            return;
        }

        const auto eq = s.find('=');
        if (eq == std::string_view::npos) throw ParseError(line, "expected `key = value`");
        const auto key = std::string(detail::trim(s.substr(0, eq)));
        const auto value = detail::trim(s.substr(eq + 1));
        if (key.empty() || value.empty()) throw ParseError(line, "expected `key = value`");

        if (section == Section::none) throw ParseError(line, "`" + key + "` appears before any section");

        if (section == Section::island) {
            if (!current->keys.insert(key).second) throw ParseError(line, "duplicate key `" + key + "`");
            if (key == "scheme") {
                if (value == "fractional") current->kind = SchemeKind::fractional;
                else if (value == "edge") current->kind = SchemeKind::edge;
                else if (value == "cut") current->kind = SchemeKind::cut;
                else if (value == "pmedian") current->kind = SchemeKind::pmedian;
                else throw ParseError(line, "unknown scheme `" + std::string(value) + "`");
            } else if (key == "max_cuts") {
                current->max_cuts = to_positive(value, line, key);
                current->max_cuts_line = line;
            } else if (key == "size") {
                current->size = to_positive(value, line, key);
            } else {
                throw ParseError(line, "unknown island key `" + key + "`");
            }
            return;
        }

        // [engine]
        if (!engine_keys.insert(key).second) throw ParseError(line, "duplicate key `" + key + "`");
        if (key == "mode") {
            if (value == "cooperative") cfg.mode = SizingMode::cooperative;
            else if (value == "hostile") cfg.mode = SizingMode::hostile;
            else throw ParseError(line, "mode must be cooperative or hostile");
        } else if (key == "epochs") {
            cfg.epochs = to_positive(value, line, key);
        } else if (key == "generations_per_epoch") {
            cfg.generations_per_epoch = to_positive(value, line, key);
        } else if (key == "tournament_size") {
            cfg.tournament_size = to_positive(value, line, key);
        } else if (key == "crossover_probability") {
            cfg.crossover_probability = to_probability(value, line, key);
        } else if (key == "mutation_rate") {
            cfg.mutation_rate = value == "auto" ? std::nullopt : std::optional(to_probability(value, line, key));
        } else if (key == "elitism") {
            cfg.elitism = to_positive(value, line, key);
        } else if (key == "penalty") {
            if (value == "auto") {
                cfg.penalty.reset();
            } else {
                cfg.penalty = to_real(value, line, key);
                if (*cfg.penalty < 0.0) throw ParseError(line, "penalty must be >= 0");
            }
        } else if (key == "max_cluster_size") {
            cfg.constraints.max_cluster_size =
                value == "none" ? std::nullopt : std::optional(to_positive(value, line, key));
        } else if (key == "max_clusters") {
            cfg.constraints.max_clusters = value == "none" ? std::nullopt : std::optional(to_positive(value, line, key));
        } else if (key == "floor") {
            cfg.floor = to_positive(value, line, key);
        } else if (key == "smoothing") {
            cfg.smoothing = to_probability(value, line, key);
        } else if (key == "seed") {
            cfg.seed = to_count(value, line, key);
        } else if (key == "parallel") {
            if (value == "true") cfg.parallel = true;
            else if (value == "false") cfg.parallel = false;
            else throw ParseError(line, "parallel must be true or false");
        } else {
            throw ParseError(line, "unknown engine key `" + key + "`");
        }
    });

    const auto last_line = detail::count_lines(text);
    std::size_t expected_id = 0;
    for (auto& [id, isl] : islands) {
        if (id != expected_id) {
            throw ParseError(isl.header_line, "island ids must be 0.." + std::to_string(islands.size() - 1) +
                                                  " without gaps; missing island." + std::to_string(expected_id));
        }
        ++expected_id;
        if (!isl.kind) throw ParseError(isl.header_line, "[island." + std::to_string(id) + "] has no scheme");
        if (*isl.kind == SchemeKind::cut) {
            if (!isl.max_cuts) throw ParseError(isl.header_line, "cut scheme requires max_cuts");
            cfg.islands.push_back({EncodingScheme::cut(*isl.max_cuts), isl.size});
        } else {
            if (isl.max_cuts) throw ParseError(isl.max_cuts_line, "max_cuts only applies to the cut scheme");
            cfg.islands.push_back({EncodingScheme{*isl.kind, 0}, isl.size});
        }
    }
    if (cfg.islands.empty()) throw ParseError(last_line, "no [island.N] sections");

    if (have_topology) {
        Topology t;
        for (const auto& pl : links) {
            if (pl.link.src >= cfg.islands.size() || pl.link.dst >= cfg.islands.size()) {
                throw ParseError(pl.line, "topology references undefined island");
            }
            t.links.push_back(pl.link);
        }
        cfg.topology = std::move(t);
    }

    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(last_line, e.what());
    }
    return cfg;
}

EngineConfig load_config(const std::string& path) {
    return parse_config(detail::read_file(path));
}

std::string print_config(const EngineConfig& cfg) {
    auto opt_count = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string("none"); };
    std::string out = "[engine]\n";
    out += "mode = " + std::string(mode_name(cfg.mode)) + "\n";
    out += "epochs = " + std::to_string(cfg.epochs) + "\n";
    out += "generations_per_epoch = " + std::to_string(cfg.generations_per_epoch) + "\n";
    out += "tournament_size = " + std::to_string(cfg.tournament_size) + "\n";
    out += "crossover_probability = " + detail::format_number(cfg.crossover_probability) + "\n";
    out += "mutation_rate = " + (cfg.mutation_rate ? detail::format_number(*cfg.mutation_rate) : "auto") + "\n";
    out += "elitism = " + std::to_string(cfg.elitism) + "\n";
    out += "penalty = " + (cfg.penalty ? detail::format_number(*cfg.penalty) : "auto") + "\n";
    out += "max_cluster_size = " + opt_count(cfg.constraints.max_cluster_size) + "\n";
    out += "max_clusters = " + opt_count(cfg.constraints.max_clusters) + "\n";
    out += "floor = " + std::to_string(cfg.floor) + "\n";
    out += "smoothing = " + detail::format_number(cfg.smoothing) + "\n";
    out += "seed = " + std::to_string(cfg.seed) + "\n";
    out += std::string("parallel = ") + (cfg.parallel ? "true" : "false") + "\n";
    for (std::size_t i = 0; i < cfg.islands.size(); ++i) {
        const auto& isl = cfg.islands[i];
        out += "\n[island." + std::to_string(i) + "]\n";
        out += "scheme = " + std::string(kind_name(isl.scheme.kind)) + "\n";
        if (isl.scheme.kind == SchemeKind::cut) out += "max_cuts = " + std::to_string(isl.scheme.max_cuts) + "\n";
        out += "size = " + std::to_string(isl.size) + "\n";
    }
    if (cfg.topology) {
        out += "\n[topology]\n";
        for (const auto& l : cfg.topology->links) {
            out += std::to_string(l.src) + " " + std::to_string(l.dst) + " " + std::to_string(l.count) + "\n";
        }
    }
    return out;
}

}  // namespace hpga
