#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <set>

#include "robots/compilers.hpp"
#include "robots/errors.hpp"

namespace robots {

namespace {

std::size_t manhattan(GridPoint a, GridPoint b) {
  const auto dx = a.first > b.first ? a.first - b.first : b.first - a.first;
  const auto dy = a.second > b.second ? a.second - b.second : b.second - a.second;
  return dx + dy;
}

std::vector<std::pair<Vertex, Vertex>> arcs_of(const DegreeReducedGraph& g) {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.next[v]) out.emplace_back(v, *g.next[v]);
  }
  return out;
}

}  // namespace

std::string GridDrawing::validate(const DegreeReducedGraph& g) const {
  if (width == 0) return "zero width";
  if (placement.size() != g.vertex_count()) return "placement does not cover every vertex";
  std::set<GridPoint> placed;
  for (const auto& p : placement) {
    if (p.first >= width || p.second >= width) return "placement outside the grid";
    if (!placed.insert(p).second) return "two vertices share a grid point";
  }
  auto arcs = arcs_of(g);
  if (routes.size() != arcs.size()) return "route count differs from arc count";
  std::set<std::pair<Vertex, Vertex>> pending(arcs.begin(), arcs.end());
  std::set<GridPoint> interior;
  for (const auto& r : routes) {
    if (!pending.erase({r.from, r.to})) return "route does not match an unrouted arc";
    if (r.points.size() < 2) return "route too short";
    if (r.points.front() != placement[r.from] || r.points.back() != placement[r.to]) return "route endpoints misplaced";
    std::set<GridPoint> own;
    for (std::size_t i = 0; i < r.points.size(); ++i) {
      const auto& p = r.points[i];
      if (p.first >= width || p.second >= width) return "route leaves the grid";
      if (!own.insert(p).second) return "route revisits a point";
      if (i > 0 && manhattan(p, r.points[i - 1]) != 1) return "route makes a non-grid step";
      if (i == 0 || i + 1 == r.points.size()) continue;
      if (placed.count(p)) return "route passes through a vertex";
      if (!interior.insert(p).second) return "routes cross";
    }
  }
  if (within_bound != (width <= g.original)) return "bound flag inconsistent";
  return {};
}

namespace {

class Attempt {
 public:
  Attempt(const DegreeReducedGraph& g, std::size_t width, std::mt19937_64& rng)
      : g_(g), width_(width), rng_(rng), cell_(width * width, kFree) {}

  std::optional<GridDrawing> run() {
    const std::size_t n = g_.vertex_count();
    std::vector<std::vector<Vertex>> adj(n);
    for (Vertex v = 0; v < n; ++v) adj[v] = g_.neighbours(v);
    std::vector<Vertex> order;
    std::vector<bool> seen(n, false);
    std::vector<Vertex> roots(n);
    for (Vertex v = 0; v < n; ++v) roots[v] = v;
    std::shuffle(roots.begin(), roots.end(), rng_);
    for (Vertex r : roots) {
      if (seen[r]) continue;
      seen[r] = true;
      std::deque<Vertex> q{r};
      while (!q.empty()) {
        Vertex v = q.front();
        q.pop_front();
        order.push_back(v);
        auto next = adj[v];
        std::shuffle(next.begin(), next.end(), rng_);
        for (Vertex w : next) {
          if (!seen[w]) {
            seen[w] = true;
            q.push_back(w);
          }
        }
      }
    }

    placement_.assign(n, GridPoint{0, 0});
    std::vector<bool> placed(n, false);
    GridDrawing d;
    d.width = width_;
    for (Vertex v : order) {
      std::vector<Vertex> anchors;
      for (Vertex w : adj[v]) {
        if (placed[w]) anchors.push_back(w);
      }
      auto spot = choose(anchors, adj[v].size());
      if (!spot) return std::nullopt;
      placement_[v] = *spot;
      cell_[index(*spot)] = kVertex;
      placed[v] = true;
      for (Vertex w : anchors) {
        if (g_.next[v] == w) {
          auto r = route(v, w);
          if (!r) return std::nullopt;
          d.routes.push_back(std::move(*r));
        }
        if (g_.next[w] == v) {
          auto r = route(w, v);
          if (!r) return std::nullopt;
          d.routes.push_back(std::move(*r));
        }
      }
    }
    d.placement = placement_;
    d.within_bound = width_ <= g_.original;
    return d;
  }

 private:
  static constexpr int kFree = 0, kVertex = 1, kRoute = 2;

  std::size_t index(GridPoint p) const { return p.second * width_ + p.first; }

  std::vector<GridPoint> around(GridPoint p) const {
    std::vector<GridPoint> out;
    if (p.first > 0) out.push_back({p.first - 1, p.second});
    if (p.first + 1 < width_) out.push_back({p.first + 1, p.second});
    if (p.second > 0) out.push_back({p.first, p.second - 1});
    if (p.second + 1 < width_) out.push_back({p.first, p.second + 1});
    return out;
  }

  std::optional<GridPoint> choose(const std::vector<Vertex>& anchors, std::size_t degree) {
    std::vector<std::pair<double, GridPoint>> candidates;
    std::uniform_real_distribution<double> jitter(0.0, 1.5);
    for (std::uint32_t y = 0; y < width_; ++y) {
      for (std::uint32_t x = 0; x < width_; ++x) {
        const GridPoint p{x, y};
        if (cell_[index(p)] != kFree) continue;
        std::size_t ports = 0;
        for (const auto& q : around(p)) {
          if (cell_[index(q)] == kFree) {
            ++ports;
          } else if (cell_[index(q)] == kVertex) {
            for (Vertex a : anchors) {
              if (placement_[a] == q) ++ports;
            }
          }
        }
        if (ports < std::min<std::size_t>(degree, around(p).size())) continue;
        double score = jitter(rng_);
        for (Vertex a : anchors) score += static_cast<double>(manhattan(p, placement_[a]));
        candidates.emplace_back(score, p);
      }
    }
    if (candidates.empty()) return std::nullopt;
    return std::min_element(candidates.begin(), candidates.end())->second;
  }

  std::optional<GridRoute> route(Vertex from, Vertex to) {
    const GridPoint start = placement_[from], goal = placement_[to];
    std::vector<long> parent(width_ * width_, -1);
    std::deque<GridPoint> q{start};
    parent[index(start)] = static_cast<long>(index(start));
    bool found = false;
    while (!q.empty() && !found) {
      GridPoint p = q.front();
      q.pop_front();
      auto next = around(p);
      std::shuffle(next.begin(), next.end(), rng_);
      for (const auto& nb : next) {
        const std::size_t i = index(nb);
        if (parent[i] != -1) continue;
        if (nb == goal) {
          parent[i] = static_cast<long>(index(p));
          found = true;
          break;
        }
        if (cell_[i] != kFree) continue;
        parent[i] = static_cast<long>(index(p));
        q.push_back(nb);
      }
    }
    if (!found) return std::nullopt;
    GridRoute r{from, to, {}};
    for (std::size_t i = index(goal);; i = static_cast<std::size_t>(parent[i])) {
      r.points.push_back({static_cast<std::uint32_t>(i % width_), static_cast<std::uint32_t>(i / width_)});
      if (i == index(start)) break;
    }
    std::reverse(r.points.begin(), r.points.end());
    for (std::size_t i = 1; i + 1 < r.points.size(); ++i) cell_[index(r.points[i])] = kRoute;
    return r;
  }

  const DegreeReducedGraph& g_;
  std::size_t width_;
  std::mt19937_64& rng_;
  std::vector<int> cell_;
  std::vector<GridPoint> placement_;
};

}  // namespace

GridDrawing grid_embed(const DegreeReducedGraph& g, const GridOptions& options) {
  const std::size_t n = g.vertex_count();
  if (n == 0) throw PreconditionError("grid_embed needs a non-empty graph");
  if (g.max_degree() > 3) throw PreconditionError("grid_embed needs maximum degree 3");
  const std::size_t cap = options.max_width.value_or(4 * n + 4);
  std::size_t width = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  for (; width <= cap; ++width) {
    for (std::size_t trial = 0; trial < options.trials_per_width; ++trial) {
      std::mt19937_64 rng(options.seed * 1000003ULL + width * 7919ULL + trial);
      Attempt attempt(g, width, rng);
      auto drawing = attempt.run();
      if (!drawing) continue;
      const std::string problem = drawing->validate(g);
      if (!problem.empty()) throw ContractError("grid_embed produced an invalid drawing: " + problem);
      return *drawing;
    }
  }
  throw ContractError("no grid drawing found up to width " + std::to_string(cap));
}

}  // namespace robots
