#include "robots/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <string>

#include "robots/errors.hpp"

namespace robots {

LabeledGraph::LabeledGraph(std::size_t vertex_count) : adjacency_(vertex_count) {}

void LabeledGraph::add_edge(Vertex u, Vertex v, Label label_uv, Label label_vu) {
  if (u >= vertex_count() || v >= vertex_count()) {
    throw PreconditionError("edge {" + std::to_string(u) + "," + std::to_string(v) +
                            "} references a missing vertex");
  }
  if (u == v) throw PreconditionError("self-loop on vertex " + std::to_string(u));
  if (adjacent(u, v)) {
    throw PreconditionError("duplicate edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
  }
  auto insert = [](std::vector<Arc>& list, Arc arc) {
    auto pos = std::lower_bound(list.begin(), list.end(), arc.to,
                                [](const Arc& a, Vertex to) { return a.to < to; });
    list.insert(pos, arc);
  };
  insert(adjacency_[u], Arc{v, label_uv});
  insert(adjacency_[v], Arc{u, label_vu});
  ++edge_count_;
}

LabeledGraph LabeledGraph::function_network(std::span<const Vertex> f) {
  LabeledGraph g(f.size());
  for (Vertex x = 0; x < f.size(); ++x) {
    if (f[x] >= f.size()) throw PreconditionError("function value out of range at " + std::to_string(x));
  }
  for (Vertex x = 0; x < f.size(); ++x) {
    const Vertex y = f[x];
    if (y != x && !g.adjacent(x, y)) g.add_edge(x, y, y, x);
  }
  g.successor_.assign(f.begin(), f.end());
  return g;
}

bool LabeledGraph::adjacent(Vertex u, Vertex v) const { return label(u, v).has_value(); }

std::optional<Label> LabeledGraph::label(Vertex u, Vertex v) const {
  const auto& list = adjacency_.at(u);
  auto pos = std::lower_bound(list.begin(), list.end(), v,
                              [](const Arc& a, Vertex to) { return a.to < to; });
  if (pos == list.end() || pos->to != v) return std::nullopt;
  return pos->label;
}

std::vector<std::pair<Vertex, Vertex>> LabeledGraph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < vertex_count(); ++u) {
    for (const Arc& a : adjacency_[u]) {
      if (u < a.to) out.emplace_back(u, a.to);
    }
  }
  return out;
}

std::vector<Vertex> LabeledGraph::moves(Vertex u) const {
  if (directed_semantics()) {
    const Vertex s = successor_.at(u);
    return s == u ? std::vector<Vertex>{} : std::vector<Vertex>{s};
  }
  std::vector<Vertex> out;
  out.reserve(adjacency_.at(u).size());
  for (const Arc& a : adjacency_[u]) out.push_back(a.to);
  return out;
}

std::vector<Vertex> LabeledGraph::closed_moves(Vertex u) const {
  auto out = moves(u);
  out.insert(std::lower_bound(out.begin(), out.end(), u), u);
  return out;
}

LabeledGraph LabeledGraph::relabeled(std::span<const Vertex> perm) const {
  LabeledGraph g(vertex_count());
  for (Vertex u = 0; u < vertex_count(); ++u) {
    for (const Arc& a : adjacency_[u]) {
      if (u < a.to) g.add_edge(perm[u], perm[a.to], a.label, *label(a.to, u));
    }
  }
  if (directed_semantics()) {
    g.successor_.assign(vertex_count(), 0);
    for (Vertex u = 0; u < vertex_count(); ++u) g.successor_[perm[u]] = perm[successor_[u]];
  }
  return g;
}

// ---------------------------------------------------------------------------

bool is_automorphism(const LabeledGraph& g, std::span<const Vertex> perm) {
  const std::size_t n = g.vertex_count();
  if (perm.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (Vertex v : perm) {
    if (v >= n || seen[v]) return false;
    seen[v] = true;
  }
  if (g.directed_semantics()) {
    for (Vertex v = 0; v < n; ++v) {
      if (perm[v] != v) return false;
    }
    return true;
  }
  for (Vertex u = 0; u < n; ++u) {
    for (const Arc& a : g.arcs(u)) {
      auto l = g.label(perm[u], perm[a.to]);
      if (!l || *l != a.label) return false;
    }
  }
  return true;
}

namespace {

// Degree plus sorted (outgoing label, incoming label) pairs: invariant under automorphisms.
using Signature = std::vector<std::pair<Label, Label>>;

Signature signature_of(const LabeledGraph& g, Vertex v) {
  Signature s;
  for (const Arc& a : g.arcs(v)) s.emplace_back(a.label, *g.label(a.to, v));
  std::sort(s.begin(), s.end());
  return s;
}

class AutomorphismSearch {
 public:
  explicit AutomorphismSearch(const LabeledGraph& g)
      : g_(g), n_(g.vertex_count()), image_(n_, kUnset), used_(n_, false), parent_(n_, kUnset) {
    std::map<Signature, std::uint32_t> ids;
    sig_.resize(n_);
    for (Vertex v = 0; v < n_; ++v) {
      auto [it, inserted] = ids.emplace(signature_of(g, v), static_cast<std::uint32_t>(ids.size()));
      sig_[v] = it->second;
    }
    // BFS order per component so every non-root vertex has an earlier neighbor.
    std::vector<bool> queued(n_, false);
    for (Vertex root = 0; root < n_; ++root) {
      if (queued[root]) continue;
      std::deque<Vertex> queue{root};
      queued[root] = true;
      while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        order_.push_back(v);
        for (const Arc& a : g.arcs(v)) {
          if (!queued[a.to]) {
            queued[a.to] = true;
            parent_[a.to] = v;
            queue.push_back(a.to);
          }
        }
      }
    }
  }

  std::vector<Permutation> run() {
    extend(0);
    std::sort(found_.begin(), found_.end());
    return std::move(found_);
  }

 private:
  static constexpr Vertex kUnset = static_cast<Vertex>(-1);

  bool consistent(Vertex v, Vertex c) const {
    if (sig_[v] != sig_[c]) return false;
    for (const Arc& a : g_.arcs(v)) {
      const Vertex img = image_[a.to];
      if (img == kUnset) continue;
      auto l = g_.label(c, img);
      if (!l || *l != a.label) return false;
      if (*g_.label(img, c) != *g_.label(a.to, v)) return false;
    }
    return true;
  }

  void extend(std::size_t depth) {
    if (depth == n_) {
      if (found_.size() >= limits().max_group) {
        throw ResourceLimit("automorphism group exceeds " + std::to_string(limits().max_group) +
                            " elements");
      }
      found_.push_back(image_);
      return;
    }
    const Vertex v = order_[depth];
    auto attempt = [&](Vertex c) {
      if (used_[c] || !consistent(v, c)) return;
      image_[v] = c;
      used_[c] = true;
      extend(depth + 1);
      used_[c] = false;
      image_[v] = kUnset;
    };
    if (parent_[v] == kUnset) {
      for (Vertex c = 0; c < n_; ++c) attempt(c);
    } else {
      for (const Arc& a : g_.arcs(image_[parent_[v]])) attempt(a.to);
    }
  }

  const LabeledGraph& g_;
  std::size_t n_;
  std::vector<std::uint32_t> sig_;
  std::vector<Vertex> order_;
  Permutation image_;
  std::vector<bool> used_;
  std::vector<Vertex> parent_;
  std::vector<Permutation> found_;
};

Permutation identity(std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), Vertex{0});
  return p;
}

}  // namespace

std::vector<Permutation> automorphism_group(const LabeledGraph& g) {
  if (g.vertex_count() > limits().max_vertices) {
    throw ResourceLimit("automorphism search limited to " + std::to_string(limits().max_vertices) +
                        " vertices");
  }
  // l(u,v)=v (and the stay-put label l(x,x)=x) fixes every vertex of a function network.
  if (g.directed_semantics()) return {identity(g.vertex_count())};
  return AutomorphismSearch(g).run();
}

std::vector<std::uint32_t> orbit_index(std::size_t vertex_count, std::span<const Permutation> group) {
  std::vector<Vertex> root(vertex_count);
  std::iota(root.begin(), root.end(), Vertex{0});
  auto find = [&](Vertex v) {
    while (root[v] != v) v = root[v] = root[root[v]];
    return v;
  };
  for (const auto& perm : group) {
    for (Vertex v = 0; v < vertex_count; ++v) {
      Vertex a = find(v), b = find(perm[v]);
      if (a != b) root[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::uint32_t> index(vertex_count);
  std::map<Vertex, std::uint32_t> ids;
  for (Vertex v = 0; v < vertex_count; ++v) {
    auto [it, inserted] = ids.emplace(find(v), static_cast<std::uint32_t>(ids.size()));
    index[v] = it->second;
  }
  return index;
}

std::vector<std::vector<std::uint32_t>> QuotientGraph::neighbors() const {
  std::vector<std::vector<std::uint32_t>> out(classes.size());
  for (auto [a, b] : edges) {
    out[a].push_back(b);
    out[b].push_back(a);
  }
  for (auto& list : out) std::sort(list.begin(), list.end());
  return out;
}

QuotientGraph quotient_graph(const LabeledGraph& g) {
  const auto group = automorphism_group(g);
  QuotientGraph q;
  q.class_of = orbit_index(g.vertex_count(), group);
  std::uint32_t count = 0;
  for (auto c : q.class_of) count = std::max(count, c + 1);
  q.classes.resize(count);
  for (Vertex v = 0; v < g.vertex_count(); ++v) q.classes[q.class_of[v]].push_back(v);
  q.has_self_loop.assign(count, false);

  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<Label>> labels;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    for (const Arc& a : g.arcs(u)) {
      const auto cu = q.class_of[u], cv = q.class_of[a.to];
      labels[{cu, cv}].push_back(a.label);
      if (cu == cv) {
        q.has_self_loop[cu] = true;
      } else if (cu < cv) {
        edges.emplace_back(cu, cv);
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  q.edges = std::move(edges);
  for (auto& [key, list] : labels) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    q.labels.emplace_back(key, std::move(list));
  }
  return q;
}

// ---------------------------------------------------------------------------

std::vector<std::size_t> bfs_distances(const LabeledGraph& g, Vertex source) {
  constexpr auto kFar = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.vertex_count(), kFar);
  std::deque<Vertex> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (const Arc& a : g.arcs(v)) {
      if (dist[a.to] == kFar) {
        dist[a.to] = dist[v] + 1;
        queue.push_back(a.to);
      }
    }
  }
  return dist;
}

std::size_t girth(const LabeledGraph& g) {
  constexpr auto kFar = std::numeric_limits<std::size_t>::max();
  std::size_t best = kInfiniteGirth;
  const std::size_t n = g.vertex_count();
  for (Vertex s = 0; s < n; ++s) {
    std::vector<std::size_t> dist(n, kFar);
    std::vector<Vertex> parent(n, s);
    std::deque<Vertex> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop_front();
      for (const Arc& a : g.arcs(v)) {
        if (dist[a.to] == kFar) {
          dist[a.to] = dist[v] + 1;
          parent[a.to] = v;
          queue.push_back(a.to);
        } else if (parent[v] != a.to) {
          best = std::min(best, dist[v] + dist[a.to] + 1);
        }
      }
    }
  }
  return best;
}

std::vector<std::uint32_t> longest_quotient_path(const QuotientGraph& q, std::size_t bound) {
  const auto adj = q.neighbors();
  const std::size_t n = q.classes.size();
  std::vector<std::uint32_t> best, current;
  std::vector<bool> on_path(n, false);
  std::size_t visited = 0;
  bool done = false;

  auto dfs = [&](auto&& self, std::uint32_t v) -> void {
    if (done) return;
    if (++visited > limits().max_states) {
      throw ResourceLimit("longest quotient path search exceeded " +
                          std::to_string(limits().max_states) + " nodes");
    }
    current.push_back(v);
    on_path[v] = true;
    if (current.size() > best.size()) best = current;
    if (best.size() >= bound + 1) done = true;
    for (auto w : adj[v]) {
      if (!on_path[w]) self(self, w);
    }
    on_path[v] = false;
    current.pop_back();
  };
  for (std::uint32_t start = 0; start < n && !done; ++start) dfs(dfs, start);
  if (best.size() > bound + 1) best.resize(bound + 1);
  return best;
}

std::size_t longest_quotient_subpath(const LabeledGraph& g, std::size_t bound) {
  const auto path = longest_quotient_path(quotient_graph(g), bound);
  return path.empty() ? 0 : std::min(bound, path.size() - 1);
}

// ---------------------------------------------------------------------------

LabeledGraph oriented_path(std::size_t n) {
  if (n == 0) throw PreconditionError("path needs at least one vertex");
  LabeledGraph g(n);
  for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1, 1, 0);
  return g;
}

LabeledGraph unoriented_path(std::size_t n) {
  if (n == 0) throw PreconditionError("path needs at least one vertex");
  LabeledGraph g(n);
  for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1, 0, 0);
  return g;
}

LabeledGraph oriented_ring(std::size_t n) {
  if (n == 0) throw PreconditionError("ring needs at least one vertex");
  LabeledGraph g(n);
  if (n == 2) {
    g.add_edge(0, 1, 1, 1);
  } else if (n >= 3) {
    for (Vertex v = 0; v < n; ++v) g.add_edge(v, static_cast<Vertex>((v + 1) % n), 1, 0);
  }
  return g;
}

LabeledGraph unoriented_ring(std::size_t n) {
  if (n == 0) throw PreconditionError("ring needs at least one vertex");
  LabeledGraph g(n);
  if (n == 2) {
    g.add_edge(0, 1, 0, 0);
  } else if (n >= 3) {
    for (Vertex v = 0; v < n; ++v) g.add_edge(v, static_cast<Vertex>((v + 1) % n), 0, 0);
  }
  return g;
}

LabeledGraph build_family(Family kind, std::size_t n) {
  switch (kind) {
    case Family::oriented_path: return oriented_path(n);
    case Family::unoriented_path: return unoriented_path(n);
    case Family::oriented_ring: return oriented_ring(n);
    case Family::unoriented_ring: return unoriented_ring(n);
  }
  throw PreconditionError("unknown family");
}

Vertex first_dangler(std::size_t n, std::size_t i) {
  return static_cast<Vertex>(n + (i == 0 ? 0 : i * (i - 1) / 2));
}

LabeledGraph complete_with_danglers(std::size_t n) {
  if (n == 0) throw PreconditionError("complete_with_danglers needs n >= 1");
  LabeledGraph g(n + n * (n - 1) / 2);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v, 0, 0);
  }
  for (Vertex i = 1; i < n; ++i) {
    for (Vertex j = 0; j < i; ++j) g.add_edge(i, first_dangler(n, i) + j, 0, 0);
  }
  return g;
}

}  // namespace robots
