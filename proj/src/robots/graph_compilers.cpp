#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include "robots/compilers.hpp"
#include "robots/errors.hpp"

namespace robots {

namespace {

Configuration successor_in(const System& s, const Configuration& c) {
  auto outcomes = step(*s.space, c, s.algorithm.at(c));
  if (outcomes.size() != 1) throw ContractError("oriented path algorithm is nondeterministic at " + to_string(c));
  return outcomes.front();
}

// Explores the configurations reachable from `starts` under algorithms built on
// the fly. `project` interprets a configuration as an OP(2w,2) configuration;
// `targets` gives, per occupied vertex, where its robot may go to realise the
// next OP configuration.
CompiledSystem explore(const std::shared_ptr<const ConfigSpace>& space, const CompiledSystem& path,
                       const std::vector<Configuration>& starts,
                       const std::function<std::optional<Configuration>(const std::vector<Vertex>&)>& project,
                       const std::function<std::map<Vertex, std::vector<Vertex>>(
                           const ConfigView&, const Configuration&, const Configuration&)>& targets,
                       std::string description) {
  CompiledSystem outer;
  outer.system.space = space;
  outer.target = std::make_shared<const System>(path.system);
  outer.description = std::move(description);
  std::deque<Configuration> queue(starts.begin(), starts.end());
  std::set<Configuration> seen(starts.begin(), starts.end());
  while (!queue.empty()) {
    const Configuration c = queue.front();
    queue.pop_front();
    const auto image = project(c.positions);
    if (!image) throw ContractError("no interpretation for reached configuration " + to_string(c));
    outer.phi.emplace(c, *image);
    const Configuration next = successor_in(path.system, *image);
    if (next == *image) continue;
    const ConfigView view = space->view(c);
    const Choice choice = choice_toward(*space, view, targets(view, *image, next));
    for (const auto& n : step(*space, view, choice)) {
      const auto reached = project(n.positions);
      if (!reached || !(*reached == next)) {
        throw ContractError("move from " + to_string(c) + " does not realise " + to_string(next));
      }
      if (seen.insert(n).second) {
        if (seen.size() > limits().max_states) throw ResourceLimit("reachable configurations exceed budget");
        queue.push_back(n);
      }
    }
    outer.system.algorithm.set(c, choice);
  }
  CompiledSystem out = compose(outer, path);
  out.description = outer.description;
  return out;
}

}  // namespace

CompiledSystem compile_long_quotient_path(const FunctionSpec& f, const LabeledGraph& g,
                                          const OrientedPathOptions& options) {
  const auto op = compile_oriented_path_detailed(f, options);
  const std::size_t needed = 2 * op.block;
  const QuotientGraph q = quotient_graph(g);
  const auto classes = longest_quotient_path(q, needed - 1);
  if (classes.size() < needed) {
    throw PreconditionError("quotient graph has no path on " + std::to_string(needed) + " classes (longest has " +
                            std::to_string(classes.size()) + ")");
  }
  std::map<std::uint32_t, Vertex> index;
  for (Vertex i = 0; i < needed; ++i) index[classes[i]] = i;

  auto space = std::make_shared<const ConfigSpace>(std::make_shared<const LabeledGraph>(g), 2);
  auto project = [&](const std::vector<Vertex>& positions) -> std::optional<Configuration> {
    Configuration c;
    for (Vertex v : positions) {
      auto it = index.find(q.class_of[v]);
      if (it == index.end()) return std::nullopt;
      c.positions.push_back(it->second);
    }
    std::sort(c.positions.begin(), c.positions.end());
    return c;
  };
  auto targets = [&](const ConfigView& view, const Configuration& now, const Configuration& next) {
    std::map<Vertex, std::vector<Vertex>> out;
    for (Vertex x : view.occupied) {
      const Vertex i = index.at(q.class_of[x]);
      const Vertex to = now.positions[0] == i ? next.positions[0] : next.positions[1];
      for (Vertex y : g.closed_moves(x)) {
        if (q.class_of[y] == classes[to]) out[x].push_back(y);
      }
    }
    return out;
  };
  std::vector<Configuration> starts;
  for (const auto& [c, image] : op.compiled.phi) {
    const Vertex x = q.classes[classes[c.positions[0]]].front();
    const Vertex y = q.classes[classes[c.positions[1]]].front();
    starts.push_back(space->canonicalize(std::vector<Vertex>{x, y}));
  }
  return explore(space, op.compiled, starts, project, targets, "long-quotient-path");
}

namespace {

std::vector<Vertex> shortest_cycle(const LabeledGraph& g, std::size_t length) {
  const std::size_t n = g.vertex_count();
  for (Vertex s = 0; s < n; ++s) {
    std::vector<std::size_t> dist(n, SIZE_MAX);
    std::vector<Vertex> parent(n, s);
    std::deque<Vertex> q{s};
    dist[s] = 0;
    while (!q.empty()) {
      const Vertex u = q.front();
      q.pop_front();
      for (const auto& arc : g.arcs(u)) {
        const Vertex v = arc.to;
        if (dist[v] == SIZE_MAX) {
          dist[v] = dist[u] + 1;
          parent[v] = u;
          q.push_back(v);
        } else if (parent[u] != v && dist[u] + dist[v] + 1 == length) {
          std::vector<Vertex> down, up;
          for (Vertex x = u; x != s; x = parent[x]) down.push_back(x);
          for (Vertex x = v; x != s; x = parent[x]) up.push_back(x);
          std::vector<Vertex> cycle{s};
          cycle.insert(cycle.end(), down.rbegin(), down.rend());
          cycle.insert(cycle.end(), up.begin(), up.end());
          if (std::set<Vertex>(cycle.begin(), cycle.end()).size() == length) return cycle;
        }
      }
    }
  }
  throw ContractError("no cycle of length " + std::to_string(length) + " found");
}

}  // namespace

CompiledSystem compile_large_girth(const FunctionSpec& f, const LabeledGraph& g, const OrientedPathOptions& options) {
  const auto op = compile_oriented_path_detailed(f, options);
  const std::size_t w = op.block;
  const std::size_t gir = girth(g);
  if (gir == kInfiniteGirth || gir < 8 * w) {
    throw PreconditionError("girth " + (gir == kInfiniteGirth ? std::string("infinite") : std::to_string(gir)) +
                            " is below the required " + std::to_string(8 * w));
  }
  const auto cycle = shortest_cycle(g, gir);
  auto space = std::make_shared<const ConfigSpace>(std::make_shared<const LabeledGraph>(g), 3);

  std::map<Vertex, std::vector<std::size_t>> dist_cache;
  std::map<Vertex, std::vector<std::size_t>> count_cache;
  auto dist = [&](Vertex v) -> const std::vector<std::size_t>& {
    auto it = dist_cache.find(v);
    if (it == dist_cache.end()) it = dist_cache.emplace(v, bfs_distances(g, v)).first;
    return it->second;
  };
  auto geodesics = [&](Vertex v) -> const std::vector<std::size_t>& {
    auto it = count_cache.find(v);
    if (it != count_cache.end()) return it->second;
    const auto& d = dist(v);
    std::vector<Vertex> order(g.vertex_count());
    for (Vertex x = 0; x < order.size(); ++x) order[x] = x;
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return d[a] < d[b]; });
    std::vector<std::size_t> count(g.vertex_count(), 0);
    count[v] = 1;
    for (Vertex x : order) {
      if (d[x] == SIZE_MAX || x == v) continue;
      for (const auto& arc : g.arcs(x)) {
        if (d[arc.to] + 1 == d[x]) count[x] += count[arc.to];
      }
    }
    return count_cache.emplace(v, std::move(count)).first->second;
  };

  const std::size_t span = 2 * w;
  auto project = [&](const std::vector<Vertex>& positions) -> std::optional<Configuration> {
    std::optional<std::size_t> anchor;
    for (std::size_t r = 0; r < 3; ++r) {
      bool far = true;
      for (std::size_t s = 0; s < 3; ++s) {
        if (s != r && dist(positions[r])[positions[s]] < span) far = false;
      }
      if (far) {
        if (anchor) return std::nullopt;
        anchor = r;
      }
    }
    if (!anchor) return std::nullopt;
    const Vertex a = positions[*anchor];
    std::vector<Vertex> others;
    for (std::size_t r = 0; r < 3; ++r) {
      if (r != *anchor) others.push_back(positions[r]);
    }
    const auto& da = dist(a);
    if (da[others[0]] > da[others[1]]) std::swap(others[0], others[1]);
    const Vertex b = others[0], c = others[1];
    if (da[c] == SIZE_MAX || da[c] >= 2 * span || da[c] != da[b] + dist(b)[c]) return std::nullopt;
    if (geodesics(a)[c] != 1) throw ContractError("geodesic from the anchor is not unique");
    Configuration out{{static_cast<Vertex>(da[b] - span), static_cast<Vertex>(da[c] - span)}};
    if (out.positions[0] == out.positions[1]) return std::nullopt;
    return out;
  };
  auto targets = [&](const ConfigView& view, const Configuration&, const Configuration& next) {
    std::map<Vertex, std::vector<Vertex>> out;
    for (Vertex x : view.occupied) {
      const auto moves = g.closed_moves(x);
      for (Vertex y : moves) {
        std::vector<Vertex> moved = view.config.positions;
        *std::find(moved.begin(), moved.end(), x) = y;
        const auto image = project(moved);
        if (image && *image == next) out[x].push_back(y);
      }
      if (out[x].empty() || std::find(out[x].begin(), out[x].end(), x) != out[x].end()) out[x] = {x};
    }
    return out;
  };
  std::vector<Configuration> starts;
  for (const auto& [c, image] : op.compiled.phi) {
    starts.push_back(space->canonicalize(
        std::vector<Vertex>{cycle[0], cycle[span + c.positions[0]], cycle[span + c.positions[1]]}));
  }
  return explore(space, op.compiled, starts, project, targets, "large-girth");
}

}  // namespace robots
