#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "robots/dynamics.hpp"
#include "robots/errors.hpp"

using namespace robots;

namespace {

Configuration cfg(std::vector<Vertex> v) { return Configuration{std::move(v)}; }

oracle::Edges library_edges(const ConfigSpace& s) {
  auto cg = build_configuration_graph(s);
  oracle::Edges e;
  for (auto [a, b] : cg.edges) e.all.insert({cg.nodes[a].positions, cg.nodes[b].positions});
  for (auto [a, b] : cg.det_edges) e.deterministic.insert({cg.nodes[a].positions, cg.nodes[b].positions});
  return e;
}

}  // namespace

TEST_CASE("oriented path step") {
  ConfigSpace s(oriented_path(5), 2);
  auto v = s.view(cfg({1, 3}));
  Choice c{{1, 2}, {3, 4}};
  CHECK(step(s, v, c) == std::vector<Configuration>{cfg({2, 4})});
  CHECK(step(s, v, {}) == std::vector<Configuration>{cfg({1, 3})});
  CHECK_FALSE(admissible(s, v, Choice{{1, 4}}));
  CHECK_THROWS_AS(step(s, v, Choice{{1, 4}}), PreconditionError);
  CHECK_THROWS_AS(step(s, v, Choice{{0, 1}}), PreconditionError);
}

TEST_CASE("unoriented path center split") {
  ConfigSpace s(unoriented_path(5), 2);
  auto v = s.view(cfg({2, 2}));
  REQUIRE(v.classes[1] == std::vector<Vertex>{1, 3});
  CHECK(step(s, v, Choice{{2, 1}}) == std::vector<Configuration>{cfg({1, 1}), cfg({1, 3})});
  CHECK(resolution_targets(s, v, 2, 1) == std::vector<Vertex>{1, 3});
  CHECK_FALSE(deterministic_choice(s, v, cfg({1, 3})).has_value());
}

TEST_CASE("symmetric robots move symmetrically") {
  ConfigSpace s(unoriented_ring(14), 2);
  auto v = s.view(cfg({0, 1}));
  for (const auto& choice : admissible_choices(s, v)) {
    for (const auto& out : step(s, v, choice)) CHECK(out != cfg({0, 0}));
  }
  ConfigSpace p(unoriented_path(4), 2);
  auto mid = p.view(cfg({1, 2}));
  for (const auto& choice : admissible_choices(p, mid)) CHECK(step(p, mid, choice).size() == 1);
}

TEST_CASE("configuration graphs match the brute-force step oracle") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const std::size_t k = 1 + trial % 3;
    auto g = oracle::random_graph(rng, n, 0.5, 1 + trial % 2);
    ConfigSpace s(g, k);
    auto expected = oracle::configuration_graph(g, k);
    auto got = library_edges(s);
    CHECK(got.all == expected.all);
    CHECK(got.deterministic == expected.deterministic);
  }
  for (auto fam : {Family::oriented_path, Family::unoriented_path, Family::oriented_ring, Family::unoriented_ring}) {
    for (std::size_t n = 2; n <= 7; ++n) {
      auto g = build_family(fam, n);
      for (std::size_t k = 1; k <= 2; ++k) {
        ConfigSpace s(g, k);
        auto expected = oracle::configuration_graph(g, k);
        auto got = library_edges(s);
        CHECK(got.all == expected.all);
        CHECK(got.deterministic == expected.deterministic);
      }
    }
  }
}

TEST_CASE("witnesses reproduce their edges") {
  ConfigSpace s(unoriented_ring(9), 2);
  auto cg = build_configuration_graph(s);
  CHECK(witnesses_valid(s, cg));
}

TEST_CASE("deterministic choice and choice_toward") {
  ConfigSpace s(oriented_path(4), 2);
  auto v = s.view(cfg({0, 2}));
  auto c = deterministic_choice(s, v, cfg({1, 3}));
  REQUIRE(c.has_value());
  CHECK(step(s, v, *c) == std::vector<Configuration>{cfg({1, 3})});
  auto t = choice_toward(s, v, {{0, {1}}, {2, {2}}});
  CHECK(step(s, v, t) == std::vector<Configuration>{cfg({1, 2})});
  ConfigSpace u(unoriented_path(5), 2);
  CHECK_THROWS_AS(choice_toward(u, u.view(cfg({2, 2})), {{2, {1}}}), ContractError);
}

TEST_CASE("run follows a deterministic algorithm into its cycle") {
  ConfigSpace s(oriented_ring(5), 1);
  Algorithm a;
  auto e = run(s, a, cfg({0}));
  CHECK(e.prefix.empty());
  CHECK(e.cycle == std::vector<Configuration>{cfg({0})});
  ConfigSpace p(oriented_path(3), 1);
  Algorithm walk;
  walk.set(cfg({0}), Choice{{0, 1}});
  walk.set(cfg({1}), Choice{{1, 2}});
  walk.set(cfg({2}), Choice{{2, 1}});
  auto w = run(p, walk, cfg({0}));
  CHECK(w.prefix == std::vector<Configuration>{cfg({0})});
  CHECK(w.cycle == std::vector<Configuration>{cfg({1}), cfg({2})});
  ConfigSpace u(unoriented_path(5), 2);
  Algorithm split;
  split.set(cfg({2, 2}), Choice{{2, 1}});
  CHECK_THROWS_AS(run(u, split, cfg({2, 2})), PreconditionError);
}

TEST_CASE("execution tree") {
  ConfigSpace u(unoriented_path(5), 2);
  Algorithm split;
  split.set(cfg({2, 2}), Choice{{2, 1}});
  auto t = execution_tree(u, split, cfg({2, 2}), 3);
  CHECK(t.successors.at(cfg({2, 2})).size() == 2);
  CHECK(t.depth.at(cfg({1, 3})) == 1);
}

TEST_CASE("random deterministic algorithms only take unique-outcome steps") {
  std::mt19937_64 rng(4);
  ConfigSpace s(unoriented_path(5), 2);
  auto a = random_deterministic_algorithm(s, rng);
  for (const auto& c : s.enumerate()) CHECK(step(s, c, a.at(c)).size() == 1);
}

TEST_CASE("structure checks") {
  ConfigSpace op(oriented_path(6), 2);
  auto cg = build_configuration_graph(op);
  CHECK(has_grid(op, cg, 3));
  CHECK_THROWS_AS(has_grid(ConfigSpace(oriented_path(5), 2), cg, 2), PreconditionError);
  ConfigSpace ur(unoriented_ring(15), 2);
  auto paths = path_union(build_configuration_graph(ur));
  CHECK(paths.holds);
  CHECK(paths.component_sizes == std::vector<std::size_t>{8});
  CHECK_FALSE(has_cycle_geq(build_configuration_graph(ur), 3));
  CHECK(has_cycle_geq(cg, 4));
  auto dot = to_dot(cg);
  CHECK(dot.find("digraph") == 0);
}
