#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <random>
#include <set>

#include "oracles.hpp"
#include "robots/compilers.hpp"
#include "robots/errors.hpp"
#include "robots/io.hpp"

using namespace robots;

namespace {

// Runs prop on `trials` generators seeded base, base+1, ...; a failure names its seed.
template <typename Prop>
void for_all(std::uint64_t base, int trials, Prop prop) {
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t seed = base + t;
    INFO("seed " << seed);
    std::mt19937_64 rng(seed);
    prop(rng);
  }
}

std::size_t draw(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

LabeledGraph random_connected(std::mt19937_64& rng, std::size_t n, Label labels) {
  LabeledGraph g(n);
  std::uniform_int_distribution<Label> label(0, labels - 1);
  for (Vertex v = 1; v < n; ++v) g.add_edge(static_cast<Vertex>(draw(rng, 0, v - 1)), v, label(rng), label(rng));
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (!g.adjacent(u, v) && draw(rng, 0, 3) == 0) g.add_edge(u, v, label(rng), label(rng));
    }
  }
  return g;
}

FunctionSpec random_function(std::mt19937_64& rng, std::size_t n) {
  FunctionSpec f;
  for (std::size_t i = 0; i < n; ++i) f.table.push_back(static_cast<Vertex>(draw(rng, 0, n - 1)));
  return f;
}

}  // namespace

TEST_CASE("canonical form ignores automorphisms and robot order") {
  for_all(100, 40, [](std::mt19937_64& rng) {
    const std::size_t n = draw(rng, 2, 8);
    auto g = random_connected(rng, n, draw(rng, 1, 2));
    ConfigSpace s(g, draw(rng, 1, 4));
    std::vector<Vertex> a(s.robots());
    for (auto& v : a) v = static_cast<Vertex>(draw(rng, 0, n - 1));
    const auto c = s.canonicalize(a);
    for (const auto& p : s.group()) {
      std::vector<Vertex> b;
      for (Vertex v : a) b.push_back(p[v]);
      std::shuffle(b.begin(), b.end(), rng);
      CHECK(s.canonicalize(b) == c);
    }
  });
}

TEST_CASE("closed forms match enumeration on random family sizes") {
  for_all(200, 40, [](std::mt19937_64& rng) {
    const auto fam = static_cast<SpaceFamily>(draw(rng, 0, 3));
    const std::size_t n = draw(rng, 1, 16);
    const std::size_t k = draw(rng, 1, 4);
    ConfigSpace s(family_graph(fam, n), k);
    CHECK(closed_form_count(fam, n, k) == s.enumerate().size());
  });
}

TEST_CASE("single robot configuration graph is the doubled quotient") {
  for_all(300, 40, [](std::mt19937_64& rng) {
    auto g = random_connected(rng, draw(rng, 1, 9), draw(rng, 1, 2));
    ConfigSpace s(g, 1);
    auto cg = build_configuration_graph(s);
    auto q = quotient_graph(g);
    CHECK(cg.deterministic());
    REQUIRE(cg.nodes.size() == q.classes.size());
    std::set<std::pair<std::uint32_t, std::uint32_t>> expected;
    for (std::uint32_t i = 0; i < q.classes.size(); ++i) expected.insert({i, i});
    for (auto [a, b] : q.edges) {
      expected.insert({a, b});
      expected.insert({b, a});
    }
    std::set<std::pair<std::uint32_t, std::uint32_t>> got;
    for (auto [a, b] : cg.edges) got.insert({q.class_of[cg.nodes[a].positions[0]], q.class_of[cg.nodes[b].positions[0]]});
    CHECK(got == expected);
  });
}

TEST_CASE("executions follow configuration graph edges") {
  for_all(400, 30, [](std::mt19937_64& rng) {
    auto g = random_connected(rng, draw(rng, 2, 7), draw(rng, 1, 3));
    ConfigSpace s(g, draw(rng, 1, 3));
    auto cg = build_configuration_graph(s);
    auto a = random_deterministic_algorithm(s, rng);
    const auto all = s.enumerate();
    const auto& start = all[draw(rng, 0, all.size() - 1)];
    auto e = run(s, a, start);
    std::vector<Configuration> trace = e.prefix;
    trace.insert(trace.end(), e.cycle.begin(), e.cycle.end());
    trace.push_back(e.cycle.front());
    for (std::size_t i = 0; i + 1 < trace.size(); ++i) {
      CHECK(cg.has_det_edge(trace[i], trace[i + 1]));
      CHECK(s.is_canonical(trace[i + 1]));
    }
  });
}

TEST_CASE("every step outcome is one hop per robot") {
  for_all(500, 30, [](std::mt19937_64& rng) {
    auto g = random_connected(rng, draw(rng, 2, 6), 1);
    ConfigSpace s(g, 2);
    for (const auto& c : s.enumerate()) {
      auto v = s.view(c);
      for (const auto& choice : admissible_choices(s, v)) {
        for (const auto& out : step(s, v, choice)) {
          // Some automorphic image of the outcome is a one-hop matching of the robots.
          bool matched = false;
          for (const auto& p : s.group()) {
            std::vector<Vertex> img;
            for (Vertex x : out.positions) img.push_back(p[x]);
            std::sort(img.begin(), img.end());
            do {
              bool ok = true;
              for (std::size_t r = 0; r < img.size(); ++r) {
                if (img[r] != c.positions[r] && !g.adjacent(img[r], c.positions[r])) ok = false;
              }
              matched = matched || ok;
            } while (!matched && std::next_permutation(img.begin(), img.end()));
            if (matched) break;
          }
          CHECK(matched);
        }
      }
    }
  });
}

TEST_CASE("compiled systems verify and survive a file round trip") {
  for_all(600, 12, [](std::mt19937_64& rng) {
    const std::size_t target = draw(rng, 0, 4);
    // The complete-graph construction has prod_i i! automorphisms; n = 7 is past the group budget.
    auto f = random_function(rng, draw(rng, 1, target == 0 ? 6 : 7));
    OrientedPathOptions options;
    options.grid.seed = rng();
    CompiledSystem c;
    switch (target) {
      case 0: c = compile_complete(f); break;
      case 1: c = compile_oriented_path(f, options); break;
      case 2: c = compile_oriented_ring(f); break;
      case 3: c = compile_unoriented(f, UnorientedTarget::path, options); break;
      default: c = compile_unoriented(f, UnorientedTarget::ring, options); break;
    }
    INFO(c.description);
    CHECK(verify_function_computation(c, f).pass);
    auto dir = std::filesystem::temp_directory_path() / "robots_property_roundtrip";
    std::filesystem::remove_all(dir);
    save_compiled(dir, c);
    auto back = load_compiled(dir);
    CHECK(verify_function_computation(back, f).pass);
    std::filesystem::remove_all(dir);
  });
}

TEST_CASE("single robot lifts verify on random graphs") {
  for_all(700, 15, [](std::mt19937_64& rng) {
    auto g = random_connected(rng, draw(rng, 2, 6), draw(rng, 1, 2));
    auto space = std::make_shared<const ConfigSpace>(g, 1);
    System base{space, random_deterministic_algorithm(*space, rng)};
    CHECK(verify_simulation(lift_one_to_k(base, draw(rng, 1, 3))).pass);
  });
}

TEST_CASE("grid drawings stay valid across seeds") {
  for_all(800, 20, [](std::mt19937_64& rng) {
    auto f = random_function(rng, draw(rng, 1, 9));
    auto r = reduce_degree(f);
    GridOptions opt;
    opt.seed = rng();
    CHECK(grid_embed(r, opt).validate(r).empty());
  });
}
