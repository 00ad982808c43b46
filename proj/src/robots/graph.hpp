#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace robots {

using Vertex = std::uint32_t;
using Label = std::uint64_t;
using Permutation = std::vector<Vertex>;

/// One end of an edge as seen from its source vertex.
struct Arc {
  Vertex to;
  Label label;  // label of the ordered pair (source, to)
  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Finite undirected graph with a non-negative label on every ordered pair of
/// adjacent vertices. Self-loops are not edges: staying put is always a move.
///
/// A graph built by `function_network` carries directed movement semantics:
/// a robot at x may only stay or move to f(x), and every vertex is
/// distinguishable.
class LabeledGraph {
 public:
  LabeledGraph() = default;
  explicit LabeledGraph(std::size_t vertex_count);

  /// Adds {u,v} with l(u,v)=label_uv and l(v,u)=label_vu.
  /// Throws PreconditionError on self-loops, duplicates or out-of-range vertices.
  void add_edge(Vertex u, Vertex v, Label label_uv, Label label_vu);

  /// The network induced by f: edges {x, f(x)} for f(x) != x, l(u,v)=v.
  static LabeledGraph function_network(std::span<const Vertex> f);

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  const std::vector<Arc>& arcs(Vertex u) const { return adjacency_.at(u); }
  std::size_t degree(Vertex u) const { return adjacency_.at(u).size(); }
  bool adjacent(Vertex u, Vertex v) const;
  std::optional<Label> label(Vertex u, Vertex v) const;
  /// All edges as (u, v) with u < v, sorted.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  bool directed_semantics() const noexcept { return !successor_.empty(); }
  /// f(u) for a function network; only valid when directed_semantics().
  Vertex successor(Vertex u) const { return successor_.at(u); }

  /// Vertices a robot at u can reach in one hop, excluding u itself.
  std::vector<Vertex> moves(Vertex u) const;
  /// moves(u) plus u, sorted.
  std::vector<Vertex> closed_moves(Vertex u) const;

  /// The same graph with vertex v renamed to perm[v].
  LabeledGraph relabeled(std::span<const Vertex> perm) const;

  friend bool operator==(const LabeledGraph&, const LabeledGraph&) = default;

 private:
  std::vector<std::vector<Arc>> adjacency_;  // sorted by Arc::to
  std::vector<Vertex> successor_;
  std::size_t edge_count_ = 0;
};

// ---------------------------------------------------------------------------
// Automorphisms and quotient

/// Every label- and adjacency-preserving permutation of the vertices, sorted
/// lexicographically (identity first). Exhaustive backtracking with
/// degree/label-signature pruning. Function networks have only the identity.
/// Throws ResourceLimit past Limits::max_vertices or Limits::max_group.
std::vector<Permutation> automorphism_group(const LabeledGraph& g);

/// Checks the automorphism predicate edge by edge.
bool is_automorphism(const LabeledGraph& g, std::span<const Vertex> perm);

/// Orbit index of every vertex; orbits numbered by their smallest vertex.
std::vector<std::uint32_t> orbit_index(std::size_t vertex_count,
                                       std::span<const Permutation> group);

struct QuotientGraph {
  std::vector<std::vector<Vertex>> classes;  // sorted by smallest member
  std::vector<std::uint32_t> class_of;
  /// Induced adjacency between distinct classes, (a, b) with a < b.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  /// True when some edge joins two vertices of the same class.
  std::vector<bool> has_self_loop;
  /// Induced labels of ordered class pairs (sorted, deduplicated).
  std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, std::vector<Label>>> labels;

  std::vector<std::vector<std::uint32_t>> neighbors() const;
};

QuotientGraph quotient_graph(const LabeledGraph& g);

// ---------------------------------------------------------------------------
// Metrics

inline constexpr std::size_t kInfiniteGirth = std::numeric_limits<std::size_t>::max();

/// Length of a shortest cycle of the base graph, kInfiniteGirth for forests.
std::size_t girth(const LabeledGraph& g);

/// Longest simple path (in edges) of the quotient graph, capped at `bound`.
/// Throws ResourceLimit if the search visits more than Limits::max_states nodes.
std::size_t longest_quotient_subpath(const LabeledGraph& g, std::size_t bound);

/// A longest simple path of the quotient as a class sequence, stopping early
/// once it has `bound` edges.
std::vector<std::uint32_t> longest_quotient_path(const QuotientGraph& q, std::size_t bound);

/// Single-source BFS hop distances; unreachable vertices get SIZE_MAX.
std::vector<std::size_t> bfs_distances(const LabeledGraph& g, Vertex source);

// ---------------------------------------------------------------------------
// Families

enum class Family { oriented_path, unoriented_path, oriented_ring, unoriented_ring };

/// Oriented variants label the step toward the larger index (clockwise) 1 and
/// the other 0; unoriented variants label everything 0.
LabeledGraph build_family(Family kind, std::size_t n);
LabeledGraph oriented_path(std::size_t n);
LabeledGraph unoriented_path(std::size_t n);
LabeledGraph oriented_ring(std::size_t n);
LabeledGraph unoriented_ring(std::size_t n);

/// K_n with i dangling vertices attached to core vertex i. Core vertices are
/// 0..n-1; the danglers of core i follow in increasing i. All labels 0.
LabeledGraph complete_with_danglers(std::size_t n);

/// Index of the first dangler of core vertex i in complete_with_danglers(n).
Vertex first_dangler(std::size_t n, std::size_t i);

}  // namespace robots
