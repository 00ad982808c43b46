#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "robots/compilers.hpp"
#include "robots/errors.hpp"
#include "robots/io.hpp"

using namespace robots;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("robots_io_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("graph round trip") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = oracle::random_graph(rng, 1 + trial % 7, 0.5, 4);
    CHECK(parse_graph(format_graph(g)) == g);
  }
  auto net = LabeledGraph::function_network(std::vector<Vertex>{1, 1, 0});
  auto back = parse_graph(format_graph(net));
  CHECK(back == net);
  CHECK(back.directed_semantics());
}

TEST_CASE("graph parse errors carry line numbers") {
  try {
    parse_graph("graph 3\n# comment\n\ne 0 1 0 0\ne 1 7 0 0\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
  }
  CHECK_THROWS_AS(parse_graph(""), ParseError);
  CHECK_THROWS_AS(parse_graph("graph 2\ne 0 0 0 0\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("graph 2\ne 0 1 0 0\ne 1 0 0 0\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("graph 2\nx 0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("graph 2\ne 0 1 -1 0\n"), ParseError);
}

TEST_CASE("function round trip and errors") {
  FunctionSpec f{{2, 0, 0, 3}};
  CHECK(parse_function(format_function(f)) == f);
  CHECK_THROWS_AS(parse_function("function 2\n0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_function("function 2\n0 1\n1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_function("function 2\n1 1\n0 0\n"), ParseError);
}

TEST_CASE("algorithm and interpretation round trip") {
  auto c = compile_unoriented(FunctionSpec::cycle(3), UnorientedTarget::path);
  const auto& space = *c.system.space;
  auto text = format_algorithm(space, c.system.algorithm);
  auto back = parse_algorithm(space, text);
  CHECK(back == c.system.algorithm);
  auto phi = parse_phi(space, *c.target->space, format_phi(c.phi));
  CHECK(phi == c.phi);
  CHECK_THROWS_AS(parse_algorithm(space, "0,1 0 => 1\n"), ParseError);
  CHECK_THROWS_AS(parse_algorithm(space, "0,1 9 -> 1\n"), ParseError);
}

TEST_CASE("compiled system directory round trip") {
  auto f = FunctionSpec::cycle(3);
  auto c = compile_oriented_ring(f);
  auto dir = scratch("ring");
  save_compiled(dir, c);
  auto back = load_compiled(dir);
  CHECK(back.system.space->graph() == c.system.space->graph());
  CHECK(back.system.algorithm == c.system.algorithm);
  CHECK(back.phi == c.phi);
  CHECK(back.description == c.description);
  CHECK(back.robots() == c.robots());
  CHECK(verify_function_computation(back, f).pass);
  CHECK(verify_simulation(back).pass);
  std::filesystem::remove(dir / "phi.txt");
  CHECK_THROWS_AS(load_compiled(dir), ParseError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("fnv1a") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}
