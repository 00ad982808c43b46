#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "robots/errors.hpp"
#include "robots/simulation.hpp"

using namespace robots;

namespace {

Configuration cfg(std::vector<Vertex> v) { return Configuration{std::move(v)}; }

System random_system(LabeledGraph g, std::size_t k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto space = std::make_shared<const ConfigSpace>(std::move(g), k);
  return System{space, random_deterministic_algorithm(*space, rng)};
}

// lambda_3 by one robot walking a 4-cycle, one step held.
CompiledSystem four_cycle_walker() {
  CompiledSystem out;
  out.system = function_system(FunctionSpec::cycle(4));
  return out;
}

}  // namespace

TEST_CASE("function system") {
  FunctionSpec f{{1, 2, 0}};
  auto s = function_system(f);
  CHECK(s.space->robots() == 1);
  CHECK(s.space->enumerate().size() == 3);
  for (Vertex x = 0; x < 3; ++x) CHECK(run(*s.space, s.algorithm, cfg({x})).cycle.size() == 3);
  const FunctionSpec outside{{0, 5}};
  const FunctionSpec empty;
  CHECK_THROWS_AS(outside.validate(), PreconditionError);
  CHECK_THROWS_AS(empty.validate(), PreconditionError);
  CHECK(FunctionSpec::cycle(3) == f);
}

TEST_CASE("identity simulation passes") {
  FunctionSpec f{{1, 1, 0, 3}};
  auto sys = function_system(f);
  auto id = identity_compiled(sys);
  auto cert = verify_function_computation(id, f);
  CHECK(cert.pass);
  CHECK(cert.starts == 4);
  CHECK(cert.advances > 0);
  CHECK(format_certificate(cert).find("verdict PASS") != std::string::npos);
}

TEST_CASE("verifier violations") {
  FunctionSpec f = FunctionSpec::cycle(3);
  auto id = identity_compiled(function_system(f));

  SUBCASE("bad step") {
    auto bad = id;
    bad.system.algorithm.set(cfg({0}), Choice{});
    auto cert = verify_function_computation(bad, f);
    // Staying forever on a non-fixed point never advances.
    CHECK_FALSE(cert.pass);
    CHECK(cert.violation == Violation::no_progress);
  }
  SUBCASE("not surjective") {
    auto bad = id;
    bad.phi.erase(cfg({2}));
    bad.phi[cfg({0})] = cfg({1});
    auto cert = verify_function_computation(bad, f);
    CHECK_FALSE(cert.pass);
  }
  SUBCASE("malformed") {
    auto bad = id;
    bad.phi[cfg({7})] = cfg({0});
    CHECK(verify_function_computation(bad, f).violation == Violation::malformed);
  }
  SUBCASE("wrong successor") {
    FunctionSpec g{{2, 0, 1}};
    auto cert = verify_function_computation(id, g);
    CHECK_FALSE(cert.pass);
    CHECK(cert.violation == Violation::bad_step);
    CHECK(cert.at.has_value());
  }
}

TEST_CASE("hold steps and undefined configurations") {
  auto w = four_cycle_walker();
  FunctionSpec f = FunctionSpec::cycle(3);
  w.target = std::make_shared<const System>(function_system(f));
  w.phi[cfg({0})] = cfg({0});
  w.phi[cfg({1})] = cfg({0});
  w.phi[cfg({2})] = cfg({1});
  w.phi[cfg({3})] = cfg({2});
  auto cert = verify_simulation(w);
  CHECK(cert.pass);
  CHECK(cert.holds == 1);
  w.phi.erase(cfg({1}));
  auto broken = verify_simulation(w);
  CHECK_FALSE(broken.pass);
  CHECK(broken.violation == Violation::undefined);
}

TEST_CASE("nondeterministic target is rejected") {
  auto space = std::make_shared<const ConfigSpace>(unoriented_path(5), 2);
  System target{space, {}};
  target.algorithm.set(cfg({2, 2}), Choice{{2, 1}});
  auto id = identity_compiled(target);
  CHECK_THROWS_AS(verify_simulation(id, target), NondeterministicTarget);
}

TEST_CASE("lift one robot to many") {
  for (auto g : {oriented_path(4), unoriented_path(5), unoriented_ring(5)}) {
    auto base = random_system(g, 1, 3);
    for (std::size_t k = 1; k <= 3; ++k) {
      auto lifted = lift_one_to_k(base, k);
      CHECK(verify_simulation(lifted).pass);
    }
  }
}

TEST_CASE("lift k robots to at least 2k") {
  auto base = random_system(oriented_path(4), 2, 8);
  CHECK(verify_simulation(lift_k_to_many(base, 4)).pass);
  CHECK(verify_simulation(lift_k_to_many(base, 5)).pass);
  CHECK_THROWS_AS(lift_k_to_many(base, 3), PreconditionError);
  auto odd = random_system(unoriented_path(5), 1, 2);
  CHECK_THROWS_AS(lift_k_to_many(odd, 2), PreconditionError);
  auto even = random_system(unoriented_path(4), 1, 2);
  CHECK(verify_simulation(lift_k_to_many(even, 2)).pass);
}

TEST_CASE("lifts keep swapping robots in step") {
  // At (0,1) on UP(2) staying and swapping are the same move; the lifted robots must not split it.
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    auto up2 = random_system(unoriented_path(2), 2, seed);
    CHECK(verify_simulation(lift_k_to_many(up2, 4)).pass);
    CHECK(verify_simulation(lift_path_ring(PathRingLift::up_to_ur, up2)).pass);
    auto up4 = random_system(unoriented_path(4), 2, seed);
    CHECK(verify_simulation(lift_path_ring(PathRingLift::up_to_ur, up4)).pass);
  }
}

TEST_CASE("path and ring lifts") {
  auto op = random_system(oriented_path(4), 2, 1);
  auto up = random_system(unoriented_path(4), 2, 1);
  auto a = lift_path_ring(PathRingLift::op_to_up, op);
  CHECK(a.vertex_count() == 8);
  CHECK(verify_simulation(a).pass);
  auto b = lift_path_ring(PathRingLift::op_to_or, op);
  CHECK(b.vertex_count() == 8);
  CHECK(b.robots() == 3);
  CHECK(verify_simulation(b).pass);
  auto c = lift_path_ring(PathRingLift::up_to_ur, up);
  CHECK(c.vertex_count() == 11);
  CHECK(verify_simulation(c).pass);
  CHECK_THROWS_AS(lift_path_ring(PathRingLift::up_to_ur, op), PreconditionError);
}

TEST_CASE("composition") {
  auto base = random_system(oriented_path(3), 2, 4);
  auto up = lift_path_ring(PathRingLift::op_to_up, base);
  auto ur = lift_path_ring(PathRingLift::up_to_ur, up.system);
  auto both = compose(ur, up);
  CHECK(both.target.get() == up.target.get());
  CHECK(verify_simulation(both).pass);
  CHECK_THROWS_AS(compose(up, up), PreconditionError);
}
