#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "robots/dynamics.hpp"

namespace robots {

/// k robots on a graph running one algorithm under the synchronous scheduler.
struct System {
  std::shared_ptr<const ConfigSpace> space;
  Algorithm algorithm;
};

/// Total function on N_n.
struct FunctionSpec {
  std::vector<Vertex> table;

  std::size_t size() const noexcept { return table.size(); }
  Vertex operator()(Vertex x) const { return table.at(x); }

  static FunctionSpec identity(std::size_t n);
  /// i -> i+1 mod m.
  static FunctionSpec cycle(std::size_t m);
  static FunctionSpec constant(std::size_t n, Vertex value);
  /// Throws PreconditionError when empty or not total on N_n.
  void validate() const;

  friend bool operator==(const FunctionSpec&, const FunctionSpec&) = default;
};

/// The single robot on the network induced by f, running A_f.
/// Element x corresponds to configuration (x).
System function_system(const FunctionSpec& f);

/// Partial map from simulating configurations to simulated ones.
using SimulationMap = std::map<Configuration, Configuration>;

/// A simulating system, its interpretation map and what it simulates.
struct CompiledSystem {
  System system;
  SimulationMap phi;
  std::shared_ptr<const System> target;
  std::string description;

  std::size_t vertex_count() const { return system.space->graph().vertex_count(); }
  std::size_t robots() const { return system.space->robots(); }
};

/// System that simulates itself under the identity map.
CompiledSystem identity_compiled(const System& system, std::string description = "identity");

/// mu = inner.phi o outer.phi; outer must simulate inner's system.
CompiledSystem compose(const CompiledSystem& outer, const CompiledSystem& inner);

// ---------------------------------------------------------------------------
// Verification

enum class Violation {
  none,
  malformed,       // phi key or value is not a canonical configuration
  not_surjective,  // some simulated configuration has no preimage
  undefined,       // (a) phi undefined on a reachable configuration
  bad_step,        // (b) a step neither holds nor advances
  no_progress,     // (c) a reachable cycle never advances
  inadmissible,    // the simulating algorithm names an impossible move
};

std::string to_string(Violation v);

struct StartStats {
  Configuration start;
  Configuration image;
  std::size_t reachable = 0;
};

struct Certificate {
  bool pass = false;
  Violation violation = Violation::none;
  std::string message;
  std::optional<Configuration> at;    // simulating configuration where it failed
  std::optional<Configuration> next;  // offending successor, for bad steps
  std::size_t starts = 0;
  std::size_t reachable = 0;
  std::size_t steps = 0;
  std::size_t holds = 0;     // steps that keep the projection on a non-fixed point
  std::size_t advances = 0;  // steps that move the projection to its successor
  std::vector<StartStats> per_start;
  /// Configurations outside phi's domain with a step into it. They are valid
  /// starting points that discharge compliance vacuously.
  std::size_t undefined_entries = 0;
  /// Reachable projected trace from each start, truncated at its first advance:
  /// the distinct simulated configurations visited before the first advance.
  std::map<Configuration, std::vector<Configuration>> first_advance;
};

/// Checks that every execution of `sim.system` from a phi-defined start
/// complies with the execution of `simulated` from the image. The simulated
/// algorithm must be deterministic on every configuration it is asked about;
/// otherwise NondeterministicTarget is thrown.
Certificate verify_simulation(const CompiledSystem& sim, const System& simulated);
Certificate verify_simulation(const CompiledSystem& sim);

/// verify_simulation against A_f on the network induced by f.
Certificate verify_function_computation(const CompiledSystem& sim, const FunctionSpec& f);

/// Machine-diffable key/value report.
std::string format_certificate(const Certificate& c);

// ---------------------------------------------------------------------------
// Domination lifts

/// Single-robot system on G lifted to k robots: configurations whose robots all
/// sit on equivalent vertices project to the single-robot configuration, and
/// every robot makes the lone robot's move.
CompiledSystem lift_one_to_k(const System& base, std::size_t k);

/// Deterministic k-robot system lifted to k' >= 2k robots: the unique vertex
/// holding at least k'-k+1 robots carries the surplus. Throws
/// PreconditionError unless G(G,k') is deterministic.
CompiledSystem lift_k_to_many(const System& base, std::size_t k_prime);

enum class PathRingLift { op_to_up, op_to_or, up_to_ur };

/// op_to_up: OP(n,k) -> UP(2n,k), robots on the first n vertices.
/// op_to_or: OP(n,k) -> OR(2n,k+1), an anchor robot followed clockwise by n-1
///           empty vertices, the working segment after them.
/// up_to_ur: UP(n,k) -> UR(3n-1,k+1), an anchor robot flanked by n-1 empty
///           vertices on both sides.
CompiledSystem lift_path_ring(PathRingLift kind, const System& base);

}  // namespace robots
