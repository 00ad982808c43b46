#include "robots/dynamics.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

#include "robots/errors.hpp"

namespace robots {

const Choice& Algorithm::at(const Configuration& c) const {
  static const Choice kStay;
  auto it = table_.find(c);
  return it == table_.end() ? kStay : it->second;
}

void Algorithm::set(const Configuration& c, Choice choice) {
  if (choice.empty()) {
    table_.erase(c);
  } else {
    table_[c] = std::move(choice);
  }
}

namespace {

// One-hop moves of the class representative that land in `dest`.
std::vector<Vertex> representative_moves(const ConfigSpace& space, const ConfigView& view, std::uint32_t own,
                                         std::uint32_t dest) {
  std::vector<Vertex> out;
  if (dest >= view.classes.size()) return out;
  const auto& cls = view.classes[dest];
  for (Vertex w : space.graph().closed_moves(view.classes[own].front())) {
    if (std::binary_search(cls.begin(), cls.end(), w)) out.push_back(w);
  }
  return out;
}

// Images of the representative's move t for the robot at u.
std::vector<Vertex> mirrored(const ConfigView& view, Vertex u, Vertex t) {
  const Vertex rep = view.classes[view.class_of[u]].front();
  std::vector<Vertex> out;
  for (const auto& alpha : view.stabilizer) {
    if (alpha[rep] == u) out.push_back(alpha[t]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void check_choice_keys(const ConfigView& view, const Choice& choice) {
  const auto occupied = view.occupied_classes();
  for (auto [from, to] : choice) {
    if (!std::binary_search(occupied.begin(), occupied.end(), from)) {
      throw PreconditionError("choice at " + to_string(view.config) + " names unoccupied class " +
                              std::to_string(from));
    }
    if (to >= view.classes.size()) {
      throw PreconditionError("choice at " + to_string(view.config) + " names missing class " + std::to_string(to));
    }
  }
}

}  // namespace

std::vector<Vertex> resolution_targets(const ConfigSpace& space, const ConfigView& view, Vertex u,
                                       std::uint32_t dest) {
  std::vector<Vertex> out;
  for (Vertex t : representative_moves(space, view, view.class_of[u], dest)) {
    auto images = mirrored(view, u, t);
    out.insert(out.end(), images.begin(), images.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Vertex> committed_targets(const ConfigSpace& space, const ConfigView& view, Vertex u,
                                      std::uint32_t dest) {
  const auto moves = representative_moves(space, view, view.class_of[u], dest);
  if (moves.empty()) return {};
  return mirrored(view, u, moves.front());
}

bool admissible(const ConfigSpace& space, const ConfigView& view, const Choice& choice) {
  try {
    check_choice_keys(view, choice);
  } catch (const PreconditionError&) {
    return false;
  }
  for (auto own : view.occupied_classes()) {
    auto it = choice.find(own);
    if (representative_moves(space, view, own, it == choice.end() ? own : it->second).empty()) return false;
  }
  return true;
}

std::vector<Configuration> step(const ConfigSpace& space, const ConfigView& view, const Choice& choice) {
  check_choice_keys(view, choice);
  const auto classes = view.occupied_classes();
  std::vector<std::vector<Vertex>> moves(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    auto it = choice.find(classes[i]);
    moves[i] = representative_moves(space, view, classes[i], it == choice.end() ? classes[i] : it->second);
    if (moves[i].empty()) {
      throw PreconditionError("inadmissible choice at " + to_string(view.config) + ": class " +
                              std::to_string(classes[i]) + " cannot reach its destination class");
    }
  }
  const std::size_t groups = view.occupied.size();
  std::vector<std::size_t> slot(groups);
  for (std::size_t g = 0; g < groups; ++g) {
    slot[g] = std::lower_bound(classes.begin(), classes.end(), view.class_of[view.occupied[g]]) - classes.begin();
  }
  std::set<Configuration> outcomes;
  Arrangement next;
  next.reserve(space.robots());
  std::size_t produced = 0;
  std::vector<std::vector<Vertex>> targets(groups);
  // Robots on one vertex are interchangeable: enumerate multisets of targets per vertex.
  auto distribute = [&](auto&& self, std::size_t group, std::size_t left, std::size_t from) -> void {
    if (group == groups) {
      if (++produced > limits().max_states) {
        throw ResourceLimit("step resolution count exceeds " + std::to_string(limits().max_states));
      }
      outcomes.insert(space.canonicalize(next));
      return;
    }
    if (left == 0) {
      if (group + 1 < groups) {
        self(self, group + 1, view.multiplicity[group + 1], 0);
      } else {
        self(self, groups, 0, 0);
      }
      return;
    }
    for (std::size_t t = from; t < targets[group].size(); ++t) {
      next.push_back(targets[group][t]);
      self(self, group, left - 1, t);
      next.pop_back();
    }
  };
  std::vector<Vertex> picked(classes.size());
  auto pick = [&](auto&& self, std::size_t i) -> void {
    if (i == classes.size()) {
      for (std::size_t g = 0; g < groups; ++g) targets[g] = mirrored(view, view.occupied[g], picked[slot[g]]);
      distribute(distribute, 0, view.multiplicity[0], 0);
      return;
    }
    for (Vertex t : moves[i]) {
      picked[i] = t;
      self(self, i + 1);
    }
  };
  pick(pick, 0);
  return {outcomes.begin(), outcomes.end()};
}

std::vector<Configuration> step(const ConfigSpace& space, const Configuration& c, const Choice& choice) {
  return step(space, space.view(c), choice);
}

std::vector<Choice> admissible_choices(const ConfigSpace& space, const ConfigView& view) {
  const auto occupied = view.occupied_classes();
  std::vector<std::vector<std::uint32_t>> options(occupied.size());
  for (std::size_t i = 0; i < occupied.size(); ++i) {
    const std::uint32_t own = occupied[i];
    for (std::uint32_t dest = 0; dest < view.classes.size(); ++dest) {
      if (!representative_moves(space, view, own, dest).empty()) options[i].push_back(dest);
    }
    // Own class first so the first product element is the stay-put choice.
    auto pos = std::find(options[i].begin(), options[i].end(), own);
    if (pos != options[i].end()) std::rotate(options[i].begin(), pos, pos + 1);
  }
  std::vector<Choice> out;
  Choice current;
  auto product = [&](auto&& self, std::size_t i) -> void {
    if (i == occupied.size()) {
      out.push_back(current);
      return;
    }
    for (auto dest : options[i]) {
      if (dest == occupied[i]) {
        current.erase(occupied[i]);
      } else {
        current[occupied[i]] = dest;
      }
      self(self, i + 1);
    }
    current.erase(occupied[i]);
  };
  product(product, 0);
  return out;
}

std::optional<Choice> deterministic_choice(const ConfigSpace& space, const ConfigView& view,
                                           const Configuration& to) {
  for (const auto& choice : admissible_choices(space, view)) {
    auto outcomes = step(space, view, choice);
    if (outcomes.size() == 1 && outcomes.front() == to) return choice;
  }
  return std::nullopt;
}

Choice choice_toward(const ConfigSpace& space, const ConfigView& view,
                     const std::map<Vertex, std::vector<Vertex>>& targets) {
  auto wanted = [&](Vertex u) -> const std::vector<Vertex>& {
    auto it = targets.find(u);
    if (it == targets.end() || it->second.empty()) {
      throw ContractError("no target set for occupied vertex " + std::to_string(u) + " at " +
                          to_string(view.config));
    }
    return it->second;
  };
  Choice choice;
  for (std::uint32_t cls : view.occupied_classes()) {
    std::vector<Vertex> members;
    for (Vertex u : view.occupied) {
      if (view.class_of[u] == cls) members.push_back(u);
    }
    bool placed = false;
    for (Vertex w : wanted(members.front())) {
      const std::uint32_t dest = view.class_of[w];
      bool ok = true;
      for (Vertex u : members) {
        const auto reach = resolution_targets(space, view, u, dest);
        const auto& allowed = wanted(u);
        if (reach.empty()) ok = false;
        for (Vertex x : reach) {
          if (std::find(allowed.begin(), allowed.end(), x) == allowed.end()) ok = false;
        }
      }
      if (ok) {
        if (dest != cls) choice[cls] = dest;
        placed = true;
        break;
      }
    }
    if (!placed) {
      throw ContractError("no destination class keeps the robots of class " + std::to_string(cls) + " at " +
                          to_string(view.config) + " inside their target sets");
    }
  }
  return choice;
}

Algorithm random_deterministic_algorithm(const ConfigSpace& space, std::mt19937_64& rng) {
  Algorithm algorithm;
  for (const auto& c : space.enumerate()) {
    const ConfigView view = space.view(c);
    std::vector<Choice> candidates;
    for (auto& choice : admissible_choices(space, view)) {
      if (step(space, view, choice).size() == 1) candidates.push_back(std::move(choice));
    }
    if (candidates.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    algorithm.set(c, candidates[pick(rng)]);
  }
  return algorithm;
}

// ---------------------------------------------------------------------------

std::size_t ConfigurationGraph::loop_free_edge_count() const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [](const auto& e) { return e.first != e.second; }));
}

ConfigurationGraph build_configuration_graph(const ConfigSpace& space) {
  ConfigurationGraph cg;
  cg.nodes = space.enumerate();
  for (std::uint32_t i = 0; i < cg.nodes.size(); ++i) cg.index.emplace(cg.nodes[i], i);
  for (std::uint32_t i = 0; i < cg.nodes.size(); ++i) {
    const ConfigView view = space.view(cg.nodes[i]);
    for (const auto& choice : admissible_choices(space, view)) {
      const auto outcomes = step(space, view, choice);
      for (const auto& next : outcomes) {
        const std::pair<std::uint32_t, std::uint32_t> edge{i, cg.index.at(next)};
        cg.edges.insert(edge);
        if (outcomes.size() == 1) {
          if (cg.det_edges.insert(edge).second) cg.witness[edge] = choice;
        } else {
          cg.witness.emplace(edge, choice);
        }
      }
    }
  }
  return cg;
}

bool witnesses_valid(const ConfigSpace& space, const ConfigurationGraph& cg) {
  for (const auto& edge : cg.edges) {
    auto it = cg.witness.find(edge);
    if (it == cg.witness.end()) return false;
    const auto outcomes = step(space, cg.nodes[edge.first], it->second);
    const auto& target = cg.nodes[edge.second];
    if (std::find(outcomes.begin(), outcomes.end(), target) == outcomes.end()) return false;
    if (cg.det_edges.count(edge) && outcomes.size() != 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

Execution run(const ConfigSpace& space, const Algorithm& algorithm, const Configuration& start) {
  std::vector<Configuration> trace;
  std::map<Configuration, std::size_t> seen;
  Configuration current = start;
  while (true) {
    auto [it, inserted] = seen.emplace(current, trace.size());
    if (!inserted) {
      Execution e;
      e.prefix.assign(trace.begin(), trace.begin() + static_cast<std::ptrdiff_t>(it->second));
      e.cycle.assign(trace.begin() + static_cast<std::ptrdiff_t>(it->second), trace.end());
      return e;
    }
    trace.push_back(current);
    auto outcomes = step(space, current, algorithm.at(current));
    if (outcomes.size() != 1) {
      throw PreconditionError("nondeterministic step at " + to_string(current) + " (" +
                              std::to_string(outcomes.size()) + " outcomes)");
    }
    current = std::move(outcomes.front());
  }
}

ExecutionTree execution_tree(const ConfigSpace& space, const Algorithm& algorithm, const Configuration& start,
                             std::size_t depth) {
  ExecutionTree tree;
  tree.start = start;
  tree.depth[start] = 0;
  std::deque<Configuration> queue{start};
  while (!queue.empty()) {
    Configuration c = queue.front();
    queue.pop_front();
    const std::size_t d = tree.depth.at(c);
    if (d == depth) continue;
    auto outcomes = step(space, c, algorithm.at(c));
    for (const auto& next : outcomes) {
      if (tree.depth.emplace(next, d + 1).second) queue.push_back(next);
    }
    tree.successors[c] = std::move(outcomes);
  }
  return tree;
}

// ---------------------------------------------------------------------------

bool has_grid(const ConfigSpace& space, const ConfigurationGraph& cg, std::size_t n) {
  if (n == 0 || space.robots() != 2 || !(space.graph() == oriented_path(2 * n))) {
    throw PreconditionError("has_grid is only defined on OP(2n,2)");
  }
  auto node = [](std::size_t a1, std::size_t a2) {
    return Configuration{{static_cast<Vertex>(a1), static_cast<Vertex>(a2)}};
  };
  auto bidirectional = [&](const Configuration& a, const Configuration& b) {
    return cg.has_det_edge(a, b) && cg.has_det_edge(b, a);
  };
  for (std::size_t a1 = 0; a1 < n; ++a1) {
    for (std::size_t a2 = n; a2 < 2 * n; ++a2) {
      const auto here = node(a1, a2);
      if (!cg.has_det_edge(here, here)) return false;
      if (a1 + 1 < n && !bidirectional(here, node(a1 + 1, a2))) return false;
      if (a2 + 1 < 2 * n && !bidirectional(here, node(a1, a2 + 1))) return false;
    }
  }
  return true;
}

PathUnion path_union(const ConfigurationGraph& cg) {
  PathUnion out;
  const std::size_t n = cg.nodes.size();
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (auto [a, b] : cg.edges) {
    if (a == b) continue;
    if (!cg.edges.count({b, a})) return out;
    if (a < b) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
  }
  std::vector<bool> seen(n, false);
  for (std::uint32_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::size_t nodes = 0, degree_sum = 0;
    std::deque<std::uint32_t> queue{s};
    seen[s] = true;
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      ++nodes;
      degree_sum += adj[v].size();
      if (adj[v].size() > 2) return out;
      for (auto w : adj[v]) {
        if (!seen[w]) {
          seen[w] = true;
          queue.push_back(w);
        }
      }
    }
    if (degree_sum / 2 != nodes - 1) return out;
    out.component_sizes.push_back(nodes);
  }
  std::sort(out.component_sizes.rbegin(), out.component_sizes.rend());
  out.holds = !out.component_sizes.empty() && out.component_sizes.size() <= 2;
  return out;
}

std::optional<std::vector<std::uint32_t>> find_cycle_geq(const ConfigurationGraph& cg, std::size_t m) {
  const std::size_t n = cg.nodes.size();
  std::vector<std::vector<std::uint32_t>> out(n);
  for (auto [a, b] : cg.edges) {
    if (a != b) out[a].push_back(b);
  }
  std::vector<bool> on_path(n, false);
  std::vector<std::uint32_t> path;
  std::size_t budget = 0;
  std::optional<std::vector<std::uint32_t>> found;
  // Each simple cycle is found from its smallest node.
  auto dfs = [&](auto&& self, std::uint32_t start, std::uint32_t v) -> bool {
    if (++budget > limits().max_states) {
      throw ResourceLimit("cycle search exceeded " + std::to_string(limits().max_states) + " steps");
    }
    path.push_back(v);
    on_path[v] = true;
    for (auto w : out[v]) {
      if (w == start && path.size() >= m) {
        found = path;
        return true;
      }
      if (w > start && !on_path[w] && self(self, start, w)) return true;
    }
    on_path[v] = false;
    path.pop_back();
    return false;
  };
  for (std::uint32_t s = 0; s < n; ++s) {
    if (dfs(dfs, s, s)) return found;
  }
  return std::nullopt;
}

bool has_cycle_geq(const ConfigurationGraph& cg, std::size_t m) { return find_cycle_geq(cg, m).has_value(); }

StructureReport structure_checks(const ConfigSpace& space, const ConfigurationGraph& cg, std::size_t cycle_len) {
  StructureReport r;
  const std::size_t v = space.graph().vertex_count();
  if (space.robots() == 2 && v % 2 == 0 && space.graph() == oriented_path(v)) r.grid = has_grid(space, cg, v / 2);
  r.paths = path_union(cg);
  r.cycle_threshold = cycle_len;
  r.cycle_geq = has_cycle_geq(cg, cycle_len);
  return r;
}

std::string to_dot(const ConfigurationGraph& cg, const DotOptions& options) {
  std::ostringstream out;
  out << "digraph " << options.name << " {\n";
  for (std::size_t i = 0; i < cg.nodes.size(); ++i) {
    out << "  n" << i << " [label=\"" << to_string(cg.nodes[i]) << "\"];\n";
  }
  for (const auto& edge : cg.edges) {
    if (edge.first == edge.second && !options.self_loops) continue;
    const bool det = cg.det_edges.count(edge) != 0;
    if (!det && options.deterministic_only) continue;
    out << "  n" << edge.first << " -> n" << edge.second;
    if (!det) out << " [style=dashed]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace robots
