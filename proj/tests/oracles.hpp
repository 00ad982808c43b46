#pragma once

// Brute-force reference implementations for small inputs. They only use the
// graph's adjacency, labels and one-hop moves.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "robots/graph.hpp"

namespace oracle {

using robots::LabeledGraph;
using robots::Vertex;
using Perm = std::vector<Vertex>;
using Config = std::vector<Vertex>;

inline bool preserves(const LabeledGraph& g, const Perm& p) {
  const std::size_t n = g.vertex_count();
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      if (u == v) continue;
      if (g.label(u, v) != g.label(p[u], p[v])) return false;
    }
  }
  return true;
}

inline std::vector<Perm> automorphisms(const LabeledGraph& g) {
  std::vector<Perm> out;
  Perm p(g.vertex_count());
  std::iota(p.begin(), p.end(), 0);
  if (g.directed_semantics()) return {p};
  do {
    if (preserves(g, p)) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline Config canonical(const std::vector<Perm>& group, const std::vector<Vertex>& arrangement) {
  Config best;
  for (const auto& p : group) {
    Config img;
    for (Vertex v : arrangement) img.push_back(p[v]);
    std::sort(img.begin(), img.end());
    if (best.empty() || img < best) best = img;
  }
  return best;
}

inline std::set<Config> space(const LabeledGraph& g, const std::vector<Perm>& group, std::size_t k) {
  std::set<Config> out;
  const std::size_t n = g.vertex_count();
  std::vector<Vertex> a(k, 0);
  while (true) {
    out.insert(canonical(group, a));
    std::size_t i = 0;
    while (i < k && ++a[i] == n) a[i++] = 0;
    if (i == k) break;
  }
  return out;
}

inline std::vector<Perm> stabilizer(const std::vector<Perm>& group, const Config& c) {
  std::vector<Perm> out;
  for (const auto& p : group) {
    Config img;
    for (Vertex v : c) img.push_back(p[v]);
    std::sort(img.begin(), img.end());
    if (img == c) out.push_back(p);
  }
  return out;
}

/// Orbits of the stabilizer, as sorted vertex lists ordered by smallest member.
inline std::vector<std::vector<Vertex>> classes(std::size_t n, const std::vector<Perm>& stab) {
  std::vector<std::vector<Vertex>> out;
  std::vector<bool> seen(n, false);
  for (Vertex v = 0; v < n; ++v) {
    if (seen[v]) continue;
    std::set<Vertex> orbit;
    for (const auto& p : stab) orbit.insert(p[v]);
    for (Vertex w : orbit) seen[w] = true;
    out.emplace_back(orbit.begin(), orbit.end());
  }
  return out;
}

/// Every outcome of one synchronous round in which class i is sent to class dest[i]
/// (indices into `classes`, only occupied classes consulted).
inline std::set<Config> step(const LabeledGraph& g, const std::vector<Perm>& group, const Config& c,
                             const std::map<std::size_t, std::size_t>& dest) {
  const std::size_t n = g.vertex_count();
  const auto stab = stabilizer(group, c);
  const auto cls = classes(n, stab);
  auto class_of = [&](Vertex v) {
    for (std::size_t i = 0; i < cls.size(); ++i) {
      if (std::find(cls[i].begin(), cls[i].end(), v) != cls[i].end()) return i;
    }
    return cls.size();
  };
  std::vector<std::size_t> occupied;
  for (Vertex v : c) {
    auto i = class_of(v);
    if (std::find(occupied.begin(), occupied.end(), i) == occupied.end()) occupied.push_back(i);
  }
  std::vector<std::vector<Vertex>> moves(occupied.size());
  for (std::size_t j = 0; j < occupied.size(); ++j) {
    const std::size_t own = occupied[j];
    auto it = dest.find(own);
    const auto& target = cls[it == dest.end() ? own : it->second];
    const Vertex rep = cls[own].front();
    for (Vertex w : g.closed_moves(rep)) {
      if (std::find(target.begin(), target.end(), w) != target.end()) moves[j].push_back(w);
    }
    if (moves[j].empty()) return {};
  }
  std::set<Config> out;
  std::vector<Vertex> picked(occupied.size());
  auto robots_round = [&]() {
    std::vector<std::vector<Vertex>> options(c.size());
    for (std::size_t r = 0; r < c.size(); ++r) {
      const std::size_t j = std::find(occupied.begin(), occupied.end(), class_of(c[r])) - occupied.begin();
      const Vertex rep = cls[occupied[j]].front();
      std::set<Vertex> imgs;
      for (const auto& p : stab) {
        if (p[rep] == c[r]) imgs.insert(p[picked[j]]);
      }
      options[r].assign(imgs.begin(), imgs.end());
    }
    std::vector<std::size_t> idx(c.size(), 0);
    while (true) {
      std::vector<Vertex> a;
      for (std::size_t r = 0; r < c.size(); ++r) a.push_back(options[r][idx[r]]);
      out.insert(canonical(group, a));
      std::size_t r = 0;
      while (r < c.size() && ++idx[r] == options[r].size()) idx[r++] = 0;
      if (r == c.size()) break;
    }
  };
  auto pick = [&](auto&& self, std::size_t j) -> void {
    if (j == occupied.size()) {
      robots_round();
      return;
    }
    for (Vertex t : moves[j]) {
      picked[j] = t;
      self(self, j + 1);
    }
  };
  pick(pick, 0);
  return out;
}

struct Edges {
  std::set<std::pair<Config, Config>> all;
  std::set<std::pair<Config, Config>> deterministic;
};

/// Configuration graph by trying every destination assignment at every configuration.
inline Edges configuration_graph(const LabeledGraph& g, std::size_t k) {
  const auto group = automorphisms(g);
  Edges e;
  for (const auto& c : space(g, group, k)) {
    const auto cls = classes(g.vertex_count(), stabilizer(group, c));
    std::set<std::size_t> occupied;
    for (Vertex v : c) {
      for (std::size_t i = 0; i < cls.size(); ++i) {
        if (std::find(cls[i].begin(), cls[i].end(), v) != cls[i].end()) occupied.insert(i);
      }
    }
    std::vector<std::size_t> occ(occupied.begin(), occupied.end());
    std::vector<std::size_t> idx(occ.size(), 0);
    while (true) {
      std::map<std::size_t, std::size_t> dest;
      for (std::size_t j = 0; j < occ.size(); ++j) dest[occ[j]] = idx[j];
      auto outs = step(g, group, c, dest);
      for (const auto& o : outs) e.all.insert({c, o});
      if (outs.size() == 1) e.deterministic.insert({c, *outs.begin()});
      std::size_t j = 0;
      while (j < occ.size() && ++idx[j] == cls.size()) idx[j++] = 0;
      if (j == occ.size()) break;
    }
  }
  return e;
}

/// Random labeled graph: each pair is an edge with probability p, labels in [0, labels).
inline LabeledGraph random_graph(std::mt19937_64& rng, std::size_t n, double p, robots::Label labels) {
  LabeledGraph g(n);
  std::bernoulli_distribution edge(p);
  std::uniform_int_distribution<robots::Label> label(0, labels - 1);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (edge(rng)) g.add_edge(u, v, label(rng), label(rng));
    }
  }
  return g;
}

}  // namespace oracle
