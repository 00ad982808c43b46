#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "robots/config_space.hpp"
#include "robots/errors.hpp"

using namespace robots;

TEST_CASE("closed forms on small values") {
  CHECK(closed_form_count(SpaceFamily::OP, 5, 2) == 15);
  CHECK(closed_form_count(SpaceFamily::UP, 5, 2) == 9);
  CHECK(closed_form_count(SpaceFamily::OR, 14, 2) == 8);
  CHECK(closed_form_count(SpaceFamily::UR, 15, 2) == 8);
  CHECK(closed_form_count(SpaceFamily::UR, 14, 2) == 8);
  CHECK(closed_form_count(SpaceFamily::OR, 6, 3) == 10);
  CHECK(binomial(40, 20) == BigInt("137846528820"));
  CHECK(euler_totient(12) == 4);
}

TEST_CASE("closed forms agree with orbit enumeration") {
  for (auto fam : {SpaceFamily::OP, SpaceFamily::UP, SpaceFamily::OR, SpaceFamily::UR}) {
    for (std::size_t n = 1; n <= 7; ++n) {
      auto g = family_graph(fam, n);
      const auto group = oracle::automorphisms(g);
      for (std::size_t k = 1; k <= 3; ++k) {
        CAPTURE(n);
        CAPTURE(k);
        CHECK(closed_form_count(fam, n, k) == oracle::space(g, group, k).size());
      }
    }
  }
}

TEST_CASE("canonical forms and enumeration match brute force") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const std::size_t k = 1 + trial % 3;
    auto g = oracle::random_graph(rng, n, 0.6, 1 + trial % 2);
    ConfigSpace s(g, k);
    const auto group = oracle::automorphisms(g);
    auto expected = oracle::space(g, group, k);
    auto got = s.enumerate();
    REQUIRE(got.size() == expected.size());
    std::size_t i = 0;
    for (const auto& c : expected) CHECK(got[i++].positions == c);
    std::uniform_int_distribution<Vertex> pick(0, n - 1);
    for (int j = 0; j < 10; ++j) {
      std::vector<Vertex> a(k);
      for (auto& v : a) v = pick(rng);
      auto c = s.canonicalize(a);
      CHECK(c.positions == oracle::canonical(group, a));
      CHECK(s.is_canonical(c));
      auto [again, alpha] = s.canonicalize_with(a);
      std::vector<Vertex> moved;
      for (Vertex v : a) moved.push_back((*alpha)[v]);
      std::sort(moved.begin(), moved.end());
      CHECK(moved == again.positions);
    }
  }
}

TEST_CASE("vertex classes are stabilizer orbits") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = oracle::random_graph(rng, 5, 0.5, 1);
    ConfigSpace s(g, 2);
    const auto group = oracle::automorphisms(g);
    for (const auto& c : s.enumerate()) {
      auto v = s.view(c);
      CHECK(v.classes == oracle::classes(5, oracle::stabilizer(group, c.positions)));
      CHECK(v.stabilizer.size() == oracle::stabilizer(group, c.positions).size());
    }
  }
}

TEST_CASE("unoriented path classes") {
  ConfigSpace s(unoriented_path(4), 2);
  auto v = s.view(Configuration{{1, 2}});
  CHECK(v.classes.size() == 2);
  CHECK(v.classes[1] == std::vector<Vertex>{1, 2});
  CHECK(v.occupied_classes() == std::vector<std::uint32_t>{1});
  auto robots = s.robot_classes(Configuration{{1, 2}});
  CHECK(robots.size() == 1);
}

TEST_CASE("parse") {
  ConfigSpace s(unoriented_path(5), 2);
  CHECK(s.parse("0,3").positions == std::vector<Vertex>{0, 3});
  CHECK(s.parse("(1,1)").positions == std::vector<Vertex>{1, 1});
  CHECK_THROWS_AS(s.parse("3,4"), ParseError);
  CHECK_THROWS_AS(s.parse("0"), ParseError);
  CHECK_THROWS_AS(s.parse("0,x"), ParseError);
  CHECK(config_id(Configuration{{0, 3}}) == "0,3");
  CHECK(to_string(Configuration{{0, 3}}) == "(0,3)");
}
