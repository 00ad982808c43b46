#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "robots/simulation.hpp"

namespace robots {

// Graph files:
//   graph <vertex_count>
//   e <u> <v> <label_uv> <label_vu>      one line per edge
//   directed-semantics                   optional; then each e line is the arc u -> f(u)
//                                        with labels f(u) and u, and unlisted vertices are fixed
// Function files:
//   function <n>
//   <i> <f(i)>                           n lines, i = 0..n-1 in order
// Algorithm tables, for non-stay choices only:
//   <config-id> <class-id> -> <class-id>
// Interpretation tables:
//   <config-id> -> <target-id>
// A config-id lists the sorted vertices of a canonical configuration separated by
// commas; a class-id numbers the vertex classes of that configuration by smallest member.
// Blank lines and lines starting with '#' are ignored when reading.

LabeledGraph parse_graph(const std::string& text);
std::string format_graph(const LabeledGraph& g);

FunctionSpec parse_function(const std::string& text);
std::string format_function(const FunctionSpec& f);

Algorithm parse_algorithm(const ConfigSpace& space, const std::string& text);
std::string format_algorithm(const ConfigSpace& space, const Algorithm& algorithm);

SimulationMap parse_phi(const ConfigSpace& space, const ConfigSpace& target, const std::string& text);
std::string format_phi(const SimulationMap& phi);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

// A compiled-system directory holds graph.txt, algorithm.txt, phi.txt and
// system.txt (`robots <k>`, `description <text>`), plus the simulated system as
// target-graph.txt, target-algorithm.txt and target-system.txt.
void save_compiled(const std::filesystem::path& dir, const CompiledSystem& compiled);
CompiledSystem load_compiled(const std::filesystem::path& dir);

/// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace robots
