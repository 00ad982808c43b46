#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "robots/simulation.hpp"

namespace robots {

/// Single robot on complete_with_danglers(n); core vertex i stands for i.
CompiledSystem compile_complete(const FunctionSpec& f);

// ---------------------------------------------------------------------------
// Degree reduction and grid drawing

/// Functional graph with maximum degree 3 whose added vertices contract back
/// onto the vertices of the induced network of f.
struct DegreeReducedGraph {
  std::size_t original = 0;                 // n
  std::vector<std::optional<Vertex>> next;  // out-arc of each vertex, none for fixed points
  std::vector<Vertex> contraction;          // vertex -> element of N_n
  std::size_t operations = 0;

  std::size_t vertex_count() const noexcept { return next.size(); }
  /// Distinct neighbours, ignoring arc direction.
  std::vector<Vertex> neighbours(Vertex v) const;
  std::size_t degree(Vertex v) const { return neighbours(v).size(); }
  std::size_t max_degree() const;
  /// Contracting every added vertex into its image yields exactly the arcs x -> f(x), f(x) != x.
  bool contracts_to(const FunctionSpec& f) const;
};

DegreeReducedGraph reduce_degree(const FunctionSpec& f);

using GridPoint = std::pair<std::uint32_t, std::uint32_t>;

struct GridRoute {
  Vertex from = 0;
  Vertex to = 0;
  std::vector<GridPoint> points;  // from's placement first, to's placement last
};

struct GridDrawing {
  std::size_t width = 0;
  std::vector<GridPoint> placement;  // per reduced vertex
  std::vector<GridRoute> routes;     // one per arc
  bool within_bound = false;         // width <= n

  /// Empty when the drawing is a valid subdivision embedding of g.
  std::string validate(const DegreeReducedGraph& g) const;
};

struct GridOptions {
  std::uint64_t seed = 0;
  std::optional<std::size_t> max_width;
  std::size_t trials_per_width = 400;
};

/// Randomised placement with shortest-path routing, widening the grid until a
/// valid drawing is found. Throws ContractError once max_width (or 4V+4) is exceeded.
GridDrawing grid_embed(const DegreeReducedGraph& g, const GridOptions& options = {});

// ---------------------------------------------------------------------------
// Path and ring targets

struct OrientedPathOptions {
  GridOptions grid;
  /// Place the drawing in the block of OP(2*block, 2) instead of OP(2w, 2).
  std::optional<std::size_t> block;
};

struct OrientedPathCompilation {
  CompiledSystem compiled;
  DegreeReducedGraph reduced;
  GridDrawing drawing;
  std::size_t block = 0;  // OP(2*block, 2)
};

OrientedPathCompilation compile_oriented_path_detailed(const FunctionSpec& f, const OrientedPathOptions& options = {});
CompiledSystem compile_oriented_path(const FunctionSpec& f, const OrientedPathOptions& options = {});

/// Two robots on OR(m,2); m is reported as the ring size of the result.
CompiledSystem compile_oriented_ring(const FunctionSpec& f);

enum class UnorientedTarget { path, ring };

/// UP(4w,2) or UR(12w-1,3) through the oriented path compiler and lifts.
CompiledSystem compile_unoriented(const FunctionSpec& f, UnorientedTarget target, const OrientedPathOptions& options = {});

// ---------------------------------------------------------------------------
// Factorial encodings

/// Steinhaus-Johnson-Trotter order starting from the identity.
std::vector<std::vector<Vertex>> sjt_sequence(std::size_t n);

/// OP(m!, k) -> OP(k*m, k*m(m-1)/2): sub-path i holds 0..m-1 robots per vertex
/// and the resulting profile, read as a permutation, indexes the i-th robot's vertex.
CompiledSystem compile_factorial_path(const System& base);

struct MinSizeParameters {
  std::size_t m = 0;
  std::size_t vertices = 0;  // 2m
  std::size_t robots = 0;    // m(m-1)
};

/// Least m with m! >= 2n.
MinSizeParameters min_size_parameters(std::size_t n);
CompiledSystem compile_min_size(const FunctionSpec& f, const GridOptions& grid = {});

/// |V|! >= n.
bool check_opt2(std::size_t system_vertices, std::size_t n);

// ---------------------------------------------------------------------------
// Arbitrary graphs

/// Two robots walking the oriented path algorithm along a path of vertex
/// classes of g. Throws PreconditionError when the quotient path is too short.
CompiledSystem compile_long_quotient_path(const FunctionSpec& f, const LabeledGraph& g,
                                          const OrientedPathOptions& options = {});

/// Three robots on a shortest cycle of g: one anchor, two running the oriented
/// path algorithm. Throws PreconditionError when girth(g) < 8w.
CompiledSystem compile_large_girth(const FunctionSpec& f, const LabeledGraph& g,
                                   const OrientedPathOptions& options = {});

}  // namespace robots
