#ifndef HPGA_CONFIG_HPP
#define HPGA_CONFIG_HPP

#include "hpga/engine.hpp"

#include <string>
#include <string_view>

namespace hpga {

// INI-style run configuration:
//
//   [engine]          key = value pairs, all optional
//   [island.N]        one per island, N = 0, 1, ... without gaps;
//                     scheme (required), max_cuts (cut only), size
//   [topology]        `src dst count` lines; omitted section = default topology
//
// `#` starts a comment line. Errors are ParseError with the line number.

EngineConfig parse_config(std::string_view text);
EngineConfig load_config(const std::string& path);

/// Canonical emitter: every key written explicitly, parse_config round-trips it.
std::string print_config(const EngineConfig& cfg);

}  // namespace hpga

#endif  // HPGA_CONFIG_HPP
