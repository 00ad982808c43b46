#include <algorithm>
#include <set>

#include "robots/compilers.hpp"
#include "robots/errors.hpp"

namespace robots {

std::vector<Vertex> DegreeReducedGraph::neighbours(Vertex v) const {
  std::set<Vertex> out;
  if (next[v] && *next[v] != v) out.insert(*next[v]);
  for (Vertex u = 0; u < next.size(); ++u) {
    if (u != v && next[u] == v) out.insert(u);
  }
  return {out.begin(), out.end()};
}

std::size_t DegreeReducedGraph::max_degree() const {
  std::size_t best = 0;
  for (Vertex v = 0; v < next.size(); ++v) best = std::max(best, degree(v));
  return best;
}

bool DegreeReducedGraph::contracts_to(const FunctionSpec& f) const {
  if (f.size() != original || contraction.size() != next.size()) return false;
  for (Vertex x = 0; x < original; ++x) {
    if (contraction[x] != x) return false;
  }
  std::set<std::pair<Vertex, Vertex>> arcs;
  for (Vertex v = 0; v < next.size(); ++v) {
    if (!next[v]) continue;
    const Vertex a = contraction[v], b = contraction[*next[v]];
    if (a != b) arcs.emplace(a, b);
  }
  std::set<std::pair<Vertex, Vertex>> expected;
  for (Vertex x = 0; x < original; ++x) {
    if (f(x) != x) expected.emplace(x, f(x));
  }
  if (arcs != expected) return false;
  for (Vertex v = static_cast<Vertex>(original); v < next.size(); ++v) {
    if (!next[v]) return false;
  }
  return true;
}

DegreeReducedGraph reduce_degree(const FunctionSpec& f) {
  f.validate();
  DegreeReducedGraph g;
  g.original = f.size();
  for (Vertex x = 0; x < f.size(); ++x) {
    g.contraction.push_back(x);
    g.next.push_back(f(x) == x ? std::nullopt : std::optional<Vertex>(f(x)));
  }
  for (Vertex v = 0; v < f.size(); ++v) {
    std::vector<Vertex> in;
    for (Vertex u = 0; u < f.size(); ++u) {
      if (u != v && f(u) == v) in.push_back(u);
    }
    auto degree = [&] { return g.degree(v); };
    std::size_t i = 0;
    if (!g.next[v]) {
      // Fixed point: a chain of added vertices collects the in-neighbours and feeds v.
      std::optional<Vertex> last;
      for (; degree() > 3 && i < in.size(); ++i) {
        const Vertex added = static_cast<Vertex>(g.next.size());
        g.next.push_back(v);
        g.contraction.push_back(v);
        g.next[in[i]] = added;
        if (last) {
          g.next[*last] = added;
        } else {
          g.next[in[++i]] = added;
        }
        last = added;
        ++g.operations;
      }
      continue;
    }
    for (; degree() > 3 && i < in.size(); ++i) {
      const Vertex u = in[i];
      if (g.next[v] == u) continue;
      const Vertex added = static_cast<Vertex>(g.next.size());
      g.next.push_back(g.next[v]);
      g.contraction.push_back(v);
      g.next[u] = added;
      g.next[v] = added;
      ++g.operations;
    }
  }
  return g;
}

}  // namespace robots
