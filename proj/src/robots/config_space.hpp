#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "robots/graph.hpp"

namespace robots {

/// Robot index -> vertex.
using Arrangement = std::vector<Vertex>;

/// Canonical representative of an equivalence class of arrangements: the
/// lexicographically least sorted position list over every automorphism.
/// Robots are anonymous, so the sorted list fixes the robot permutation.
struct Configuration {
  std::vector<Vertex> positions;

  auto operator<=>(const Configuration&) const = default;
  bool operator==(const Configuration&) const = default;
};

/// Prints `(v0,v1,...)`.
std::string to_string(const Configuration& c);

/// A configuration together with its indistinguishable vertex classes, i.e.
/// the orbits of the automorphisms that fix the position multiset.
struct ConfigView {
  Configuration config;
  std::vector<std::vector<Vertex>> classes;  // ordered by smallest member
  std::vector<std::uint32_t> class_of;       // vertex -> class index
  std::vector<Vertex> occupied;              // distinct occupied vertices, ascending
  std::vector<std::uint32_t> multiplicity;   // robots on occupied[i]
  std::vector<Permutation> stabilizer;       // automorphisms fixing the configuration

  /// Classes containing at least one robot, ascending.
  std::vector<std::uint32_t> occupied_classes() const;
};

/// The configuration space C(G,k) of k anonymous robots on a labeled graph.
/// Immutable after construction; the automorphism group is computed once.
class ConfigSpace {
 public:
  ConfigSpace(std::shared_ptr<const LabeledGraph> graph, std::size_t robots);
  ConfigSpace(LabeledGraph graph, std::size_t robots);

  const LabeledGraph& graph() const noexcept { return *graph_; }
  std::shared_ptr<const LabeledGraph> graph_ptr() const noexcept { return graph_; }
  std::size_t robots() const noexcept { return robots_; }
  const std::vector<Permutation>& group() const noexcept { return group_; }
  /// Orbit of each vertex under the whole automorphism group.
  const std::vector<std::uint32_t>& orbit() const noexcept { return orbit_; }

  Configuration canonicalize(std::span<const Vertex> arrangement) const;
  /// Canonical form plus an automorphism that carries the arrangement onto it.
  std::pair<Configuration, const Permutation*> canonicalize_with(std::span<const Vertex> arrangement) const;
  bool is_canonical(const Configuration& c) const;

  /// Every configuration once, in ascending canonical order.
  /// Throws ResourceLimit when the multiset count exceeds Limits::max_states.
  std::vector<Configuration> enumerate() const;

  ConfigView view(const Configuration& c) const;
  std::vector<std::vector<Vertex>> vertex_classes(const Configuration& c) const;
  /// Robot r is the robot at c.positions[r].
  std::vector<std::vector<std::uint32_t>> robot_classes(const Configuration& c) const;

  /// Parses `a,b,c` (or `(a,b,c)`) and checks it is a canonical configuration.
  Configuration parse(const std::string& text) const;

 private:
  std::shared_ptr<const LabeledGraph> graph_;
  std::size_t robots_;
  std::vector<Permutation> group_;
  std::vector<std::uint32_t> orbit_;
};

/// Text used for configurations in table files: `a,b,c`.
std::string config_id(const Configuration& c);

// ---------------------------------------------------------------------------
// Closed-form counts

using BigInt = boost::multiprecision::cpp_int;

enum class SpaceFamily { OP, UP, OR, UR };

BigInt binomial(std::uint64_t n, std::uint64_t r);
std::uint64_t euler_totient(std::uint64_t n);

/// Exact |C(G,k)| for oriented/unoriented paths and rings with n vertices.
/// OP: C(n+k-1,k). OR: the necklace formula
///   1/(n+k) * sum_{d | gcd(k,n)} phi(d) * C((n+k)/d, k/d).
/// UP and UR: Burnside averages over the reflection and dihedral groups.
BigInt closed_form_count(SpaceFamily family, std::uint64_t n, std::uint64_t k);

LabeledGraph family_graph(SpaceFamily family, std::size_t n);

}  // namespace robots
