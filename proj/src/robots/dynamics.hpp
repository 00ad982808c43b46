#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "robots/config_space.hpp"

namespace robots {

/// Destination class for each occupied vertex class of one configuration.
/// Occupied classes without an entry stay put.
using Choice = std::map<std::uint32_t, std::uint32_t>;

/// Extensional algorithm: one choice per configuration. Configurations
/// missing from the table run the stay-put choice.
class Algorithm {
 public:
  const Choice& at(const Configuration& c) const;
  void set(const Configuration& c, Choice choice);
  void erase(const Configuration& c) { table_.erase(c); }
  bool contains(const Configuration& c) const { return table_.count(c) != 0; }
  const std::map<Configuration, Choice>& table() const noexcept { return table_; }
  std::size_t size() const noexcept { return table_.size(); }

  friend bool operator==(const Algorithm&, const Algorithm&) = default;

 private:
  std::map<Configuration, Choice> table_;
};

/// Vertices a robot at `u` may be moved to when its class is sent to `dest`.
/// The scheduler picks one move t of the class representative (its smallest
/// vertex) into `dest`; a robot at u then goes to some a(t) with a in the
/// stabilizer of the configuration and a(representative) = u.
std::vector<Vertex> resolution_targets(const ConfigSpace& space, const ConfigView& view, Vertex u,
                                       std::uint32_t dest);

/// Targets of the robot at `u` once the scheduler has committed the class
/// representative to its smallest move into `dest`. For a choice with a single
/// outcome every commitment leads there, so these sets can be resolved
/// independently per robot without leaving that outcome.
std::vector<Vertex> committed_targets(const ConfigSpace& space, const ConfigView& view, Vertex u,
                                      std::uint32_t dest);

/// True when every occupied class has a destination reachable in one hop.
bool admissible(const ConfigSpace& space, const ConfigView& view, const Choice& choice);

/// Every configuration the fully synchronous scheduler can produce from
/// `view` under `choice`, sorted. Throws PreconditionError on an
/// inadmissible choice.
std::vector<Configuration> step(const ConfigSpace& space, const ConfigView& view, const Choice& choice);
std::vector<Configuration> step(const ConfigSpace& space, const Configuration& c, const Choice& choice);

/// All admissible choices at a configuration (cartesian product of the
/// admissible destinations of each occupied class), stay-put first.
std::vector<Choice> admissible_choices(const ConfigSpace& space, const ConfigView& view);

/// Some admissible choice whose only outcome is `to`, if one exists.
std::optional<Choice> deterministic_choice(const ConfigSpace& space, const ConfigView& view,
                                           const Configuration& to);

/// Sends the class of each occupied vertex toward the given target sets. For
/// each occupied class a destination containing a member of the first
/// representative's target set is picked; the choice is accepted only if the
/// scheduler cannot take any robot outside its target set. Throws
/// ContractError otherwise.
Choice choice_toward(const ConfigSpace& space, const ConfigView& view,
                     const std::map<Vertex, std::vector<Vertex>>& targets);

/// Uniformly random choice among those with a single outcome, per configuration.
Algorithm random_deterministic_algorithm(const ConfigSpace& space, std::mt19937_64& rng);

// ---------------------------------------------------------------------------

struct ConfigurationGraph {
  std::vector<Configuration> nodes;
  std::map<Configuration, std::uint32_t> index;
  std::set<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::set<std::pair<std::uint32_t, std::uint32_t>> det_edges;
  /// One admissible choice producing each edge (a deterministic one for det_edges).
  std::map<std::pair<std::uint32_t, std::uint32_t>, Choice> witness;

  std::uint32_t id(const Configuration& c) const { return index.at(c); }
  bool has_edge(const Configuration& a, const Configuration& b) const { return edges.count({id(a), id(b)}) != 0; }
  bool has_det_edge(const Configuration& a, const Configuration& b) const {
    return det_edges.count({id(a), id(b)}) != 0;
  }
  bool deterministic() const { return edges == det_edges; }
  std::size_t loop_free_edge_count() const;
};

/// Builds G(G,k) and G'(G,k) from the per-step characterization of edges.
ConfigurationGraph build_configuration_graph(const ConfigSpace& space);

/// Re-runs the stored witness of every edge and checks it still produces the edge.
bool witnesses_valid(const ConfigSpace& space, const ConfigurationGraph& cg);

// ---------------------------------------------------------------------------

/// rho-shaped infinite execution: prefix followed by cycle repeated forever.
struct Execution {
  std::vector<Configuration> prefix;
  std::vector<Configuration> cycle;
};

/// Iterates a deterministic algorithm until a configuration repeats. Throws
/// PreconditionError on a step with more than one outcome.
Execution run(const ConfigSpace& space, const Algorithm& algorithm, const Configuration& start);

/// Reachable part of the step relation from `start`, explored breadth first
/// up to `depth` steps. Repeated configurations are shared.
struct ExecutionTree {
  Configuration start;
  std::map<Configuration, std::vector<Configuration>> successors;
  std::map<Configuration, std::size_t> depth;
};

ExecutionTree execution_tree(const ConfigSpace& space, const Algorithm& algorithm, const Configuration& start,
                             std::size_t depth);

// ---------------------------------------------------------------------------
// Structure checks

/// On G(OP(2n,2)): the block {(a1,a2) : 0 <= a1 < n <= a2 < 2n} carries every
/// grid adjacency as a bidirectional deterministic edge, plus self-loops.
/// Throws PreconditionError unless the space is OP(2n,2).
bool has_grid(const ConfigSpace& space, const ConfigurationGraph& cg, std::size_t n);

struct PathUnion {
  bool holds = false;
  std::vector<std::size_t> component_sizes;  // descending
};

/// Non-loop edges all bidirectional and forming one or two disjoint simple
/// paths that cover every node.
PathUnion path_union(const ConfigurationGraph& cg);

/// A simple directed cycle of length >= m among non-loop edges, if any.
/// Throws ResourceLimit when the search exceeds Limits::max_states steps.
std::optional<std::vector<std::uint32_t>> find_cycle_geq(const ConfigurationGraph& cg, std::size_t m);
bool has_cycle_geq(const ConfigurationGraph& cg, std::size_t m);

struct StructureReport {
  std::optional<bool> grid;  // only for OP(2n,2) spaces
  PathUnion paths;
  bool cycle_geq = false;
  std::size_t cycle_threshold = 0;
};

StructureReport structure_checks(const ConfigSpace& space, const ConfigurationGraph& cg, std::size_t cycle_len);

/// Graphviz export. Deterministic edges solid, the others dashed.
struct DotOptions {
  bool self_loops = false;
  bool deterministic_only = false;
  std::string name = "configurations";
};

std::string to_dot(const ConfigurationGraph& cg, const DotOptions& options = {});

}  // namespace robots
