#include "robots/simulation.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

#include "robots/errors.hpp"

namespace robots {

FunctionSpec FunctionSpec::identity(std::size_t n) {
  FunctionSpec f;
  for (Vertex x = 0; x < n; ++x) f.table.push_back(x);
  return f;
}

FunctionSpec FunctionSpec::cycle(std::size_t m) {
  FunctionSpec f;
  for (Vertex x = 0; x < m; ++x) f.table.push_back(static_cast<Vertex>((x + 1) % m));
  return f;
}

FunctionSpec FunctionSpec::constant(std::size_t n, Vertex value) {
  FunctionSpec f;
  f.table.assign(n, value);
  return f;
}

void FunctionSpec::validate() const {
  if (table.empty()) throw PreconditionError("function on an empty domain");
  for (std::size_t x = 0; x < table.size(); ++x) {
    if (table[x] >= table.size()) {
      throw PreconditionError("f(" + std::to_string(x) + ") = " + std::to_string(table[x]) + " is outside N_" +
                              std::to_string(table.size()));
    }
  }
}

System function_system(const FunctionSpec& f) {
  f.validate();
  auto space = std::make_shared<const ConfigSpace>(LabeledGraph::function_network(f.table), 1);
  System s{space, {}};
  for (Vertex x = 0; x < f.size(); ++x) {
    if (f(x) == x) continue;
    const Configuration c{{x}};
    const ConfigView view = space->view(c);
    s.algorithm.set(c, Choice{{view.class_of[x], view.class_of[f(x)]}});
  }
  return s;
}

CompiledSystem identity_compiled(const System& system, std::string description) {
  CompiledSystem out{system, {}, std::make_shared<const System>(system), std::move(description)};
  for (const auto& c : system.space->enumerate()) out.phi.emplace(c, c);
  return out;
}

namespace {

bool same_space(const ConfigSpace& a, const ConfigSpace& b) {
  return a.robots() == b.robots() && a.graph() == b.graph();
}

}  // namespace

CompiledSystem compose(const CompiledSystem& outer, const CompiledSystem& inner) {
  if (!outer.target || !same_space(*outer.target->space, *inner.system.space) ||
      !(outer.target->algorithm == inner.system.algorithm)) {
    throw PreconditionError("compose: outer system does not simulate the inner system");
  }
  CompiledSystem out{outer.system, {}, inner.target, outer.description + " o " + inner.description};
  for (const auto& [c, mid] : outer.phi) {
    auto it = inner.phi.find(mid);
    if (it != inner.phi.end()) out.phi.emplace(c, it->second);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string to_string(Violation v) {
  switch (v) {
    case Violation::none: return "none";
    case Violation::malformed: return "malformed";
    case Violation::not_surjective: return "not-surjective";
    case Violation::undefined: return "a:undefined";
    case Violation::bad_step: return "b:bad-step";
    case Violation::no_progress: return "c:no-progress";
    case Violation::inadmissible: return "inadmissible";
  }
  return "unknown";
}

namespace {

constexpr std::size_t kEntryScanLimit = 20000;

Certificate fail(Certificate c, Violation v, std::string message, std::optional<Configuration> at = std::nullopt,
                 std::optional<Configuration> next = std::nullopt) {
  c.pass = false;
  c.violation = v;
  c.message = std::move(message);
  c.at = std::move(at);
  c.next = std::move(next);
  return c;
}

class SimulatedSuccessor {
 public:
  explicit SimulatedSuccessor(const System& s) : s_(s) {}
  const Configuration& operator()(const Configuration& d) {
    auto it = cache_.find(d);
    if (it != cache_.end()) return it->second;
    auto outcomes = step(*s_.space, d, s_.algorithm.at(d));
    if (outcomes.size() != 1) {
      throw NondeterministicTarget("simulated algorithm is nondeterministic at " + to_string(d) + " (" +
                                   std::to_string(outcomes.size()) + " outcomes)");
    }
    return cache_.emplace(d, std::move(outcomes.front())).first->second;
  }

 private:
  const System& s_;
  std::map<Configuration, Configuration> cache_;
};

}  // namespace

Certificate verify_simulation(const CompiledSystem& sim, const System& simulated) {
  Certificate cert;
  const ConfigSpace& space = *sim.system.space;
  const ConfigSpace& target = *simulated.space;

  for (const auto& [c, d] : sim.phi) {
    if (!space.is_canonical(c)) return fail(cert, Violation::malformed, "phi key is not canonical", c);
    if (!target.is_canonical(d)) return fail(cert, Violation::malformed, "phi value is not canonical", c);
  }
  std::set<Configuration> image;
  for (const auto& [c, d] : sim.phi) image.insert(d);
  for (const auto& d : target.enumerate()) {
    if (!image.count(d)) {
      return fail(cert, Violation::not_surjective, "no simulating configuration represents " + to_string(d));
    }
  }

  SimulatedSuccessor next_of(simulated);
  std::map<Configuration, std::vector<Configuration>> outgoing;
  std::deque<Configuration> queue;
  for (const auto& [c, d] : sim.phi) {
    outgoing.emplace(c, std::vector<Configuration>{});
    queue.push_back(c);
  }
  cert.starts = sim.phi.size();
  std::set<Configuration> expanded;
  while (!queue.empty()) {
    Configuration c = std::move(queue.front());
    queue.pop_front();
    if (!expanded.insert(c).second) continue;
    const Configuration& here = sim.phi.at(c);
    const Configuration& succ = next_of(here);
    std::vector<Configuration> outcomes;
    try {
      outcomes = step(space, c, sim.system.algorithm.at(c));
    } catch (const PreconditionError& e) {
      return fail(cert, Violation::inadmissible, e.what(), c);
    }
    for (const auto& n : outcomes) {
      ++cert.steps;
      auto it = sim.phi.find(n);
      if (it == sim.phi.end()) {
        return fail(cert, Violation::undefined, "step leaves the domain of phi", c, n);
      }
      if (it->second == here && !(succ == here)) {
        ++cert.holds;
      } else if (it->second == succ) {
        ++cert.advances;
      } else {
        return fail(cert, Violation::bad_step,
                    "step maps " + to_string(here) + " to " + to_string(it->second) + ", expected " +
                        to_string(here) + " or " + to_string(succ),
                    c, n);
      }
      if (!expanded.count(n)) queue.push_back(n);
    }
    outgoing[c] = std::move(outcomes);
  }
  cert.reachable = expanded.size();

  // (c): the strict-hold subgraph must be acyclic.
  auto strict_hold = [&](const Configuration& a, const Configuration& b) {
    const auto& pa = sim.phi.at(a);
    return sim.phi.at(b) == pa && !(next_of(pa) == pa);
  };
  std::map<Configuration, int> color;  // 0 new, 1 open, 2 done
  for (const auto& [root, unused] : outgoing) {
    if (color[root] != 0) continue;
    std::vector<std::pair<Configuration, std::size_t>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      const auto& succs = outgoing.at(v);
      if (i == succs.size()) {
        color[v] = 2;
        stack.pop_back();
        continue;
      }
      const Configuration w = succs[i++];
      if (!strict_hold(v, w)) continue;
      int& cw = color[w];
      if (cw == 1) {
        return fail(cert, Violation::no_progress,
                    "a cycle of steps never leaves " + to_string(sim.phi.at(w)) + ", which is not a fixed point",
                    w);
      }
      if (cw == 0) {
        cw = 1;
        stack.emplace_back(w, 0);
      }
    }
  }

  // Per-start statistics and traces up to the first advance.
  for (const auto& [start, img] : sim.phi) {
    StartStats stats{start, img, 0};
    std::set<Configuration> seen{start};
    std::deque<Configuration> q{start};
    std::set<Configuration> visited_values{img};
    std::set<Configuration> hold_seen{start};
    std::deque<Configuration> hq{start};
    while (!hq.empty()) {
      Configuration v = hq.front();
      hq.pop_front();
      for (const auto& w : outgoing.at(v)) {
        visited_values.insert(sim.phi.at(w));
        if (strict_hold(v, w) && hold_seen.insert(w).second) hq.push_back(w);
      }
    }
    while (!q.empty()) {
      Configuration v = q.front();
      q.pop_front();
      for (const auto& w : outgoing.at(v)) {
        if (seen.insert(w).second) q.push_back(w);
      }
    }
    stats.reachable = seen.size();
    cert.per_start.push_back(std::move(stats));
    cert.first_advance.emplace(start, std::vector<Configuration>(visited_values.begin(), visited_values.end()));
  }

  // Entry points from outside the domain, when the space is small enough to scan.
  const BigInt size = binomial(space.graph().vertex_count() + space.robots() - 1, space.robots());
  if (size <= kEntryScanLimit) {
    for (const auto& c : space.enumerate()) {
      if (sim.phi.count(c)) continue;
      try {
        for (const auto& n : step(space, c, sim.system.algorithm.at(c))) {
          if (sim.phi.count(n)) {
            ++cert.undefined_entries;
            break;
          }
        }
      } catch (const PreconditionError&) {
        // Outside the domain an inadmissible entry never runs from a phi-defined start.
      }
    }
  }

  cert.pass = true;
  return cert;
}

Certificate verify_simulation(const CompiledSystem& sim) {
  if (!sim.target) throw PreconditionError("compiled system has no simulated target");
  return verify_simulation(sim, *sim.target);
}

Certificate verify_function_computation(const CompiledSystem& sim, const FunctionSpec& f) {
  return verify_simulation(sim, function_system(f));
}

std::string format_certificate(const Certificate& c) {
  std::ostringstream out;
  out << "verdict " << (c.pass ? "PASS" : "FAIL") << "\n";
  out << "violation " << to_string(c.violation) << "\n";
  out << "starts " << c.starts << "\n";
  out << "reachable " << c.reachable << "\n";
  out << "steps " << c.steps << "\n";
  out << "holds " << c.holds << "\n";
  out << "advances " << c.advances << "\n";
  out << "undefined_entries " << c.undefined_entries << "\n";
  if (c.at) out << "failure_at " << to_string(*c.at) << "\n";
  if (c.next) out << "failure_next " << to_string(*c.next) << "\n";
  if (!c.message.empty()) out << "message " << c.message << "\n";
  for (const auto& s : c.per_start) {
    out << "start " << to_string(s.start) << " -> " << to_string(s.image) << " reachable " << s.reachable << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Lifts

namespace {

Permutation inverse(const Permutation& p) {
  Permutation inv(p.size());
  for (Vertex v = 0; v < p.size(); ++v) inv[p[v]] = v;
  return inv;
}

const Configuration& single_successor(const System& s, const Configuration& c) {
  static thread_local Configuration holder;
  auto outcomes = step(*s.space, c, s.algorithm.at(c));
  if (outcomes.size() != 1) {
    throw NondeterministicTarget("base algorithm is nondeterministic at " + to_string(c));
  }
  holder = std::move(outcomes.front());
  return holder;
}

}  // namespace

CompiledSystem lift_one_to_k(const System& base, std::size_t k) {
  if (k == 0) throw PreconditionError("lift_one_to_k needs k >= 1");
  if (base.space->robots() != 1) throw PreconditionError("lift_one_to_k needs a single-robot base");
  auto space = std::make_shared<const ConfigSpace>(base.space->graph_ptr(), k);
  const auto& orbit = space->orbit();
  const std::size_t n = space->graph().vertex_count();

  CompiledSystem out;
  out.system.space = space;
  out.target = std::make_shared<const System>(base);
  out.description = "one-to-" + std::to_string(k);

  std::map<std::uint32_t, std::vector<Vertex>> members;
  for (Vertex v = 0; v < n; ++v) members[orbit[v]].push_back(v);
  std::size_t produced = 0;
  for (const auto& [id, verts] : members) {
    const Configuration base_config = base.space->canonicalize(std::vector<Vertex>{verts.front()});
    const std::uint32_t goal = orbit[single_successor(base, base_config).positions.front()];
    Arrangement a(k, 0);
    auto fill = [&](auto&& self, std::size_t slot, std::size_t from) -> void {
      if (slot == k) {
        if (++produced > limits().max_states) throw ResourceLimit("lift_one_to_k domain exceeds budget");
        Configuration c = space->canonicalize(a);
        if (out.phi.count(c)) return;
        out.phi.emplace(c, base_config);
        const ConfigView view = space->view(c);
        std::map<Vertex, std::vector<Vertex>> targets;
        for (Vertex x : view.occupied) {
          for (Vertex w : space->graph().closed_moves(x)) {
            if (orbit[w] == goal) targets[x].push_back(w);
          }
        }
        out.system.algorithm.set(c, choice_toward(*space, view, targets));
        return;
      }
      for (std::size_t i = from; i < verts.size(); ++i) {
        a[slot] = verts[i];
        self(self, slot + 1, i);
      }
    };
    fill(fill, 0, 0);
  }
  return out;
}

namespace {

// A choice at `view` whose every outcome passes `ok`. Tries the target sets
// first, then every admissible choice.
Choice lifted_choice(const ConfigSpace& space, const ConfigView& view,
                     const std::vector<std::map<Vertex, std::vector<Vertex>>>& target_sets,
                     const std::function<bool(const Configuration&)>& ok) {
  auto valid = [&](const Choice& choice) {
    for (const auto& c : step(space, view, choice)) {
      if (!ok(c)) return false;
    }
    return true;
  };
  for (const auto& targets : target_sets) {
    try {
      Choice choice = choice_toward(space, view, targets);
      if (valid(choice)) return choice;
    } catch (const ContractError&) {
    }
  }
  for (auto& choice : admissible_choices(space, view)) {
    if (valid(choice)) return choice;
  }
  throw ContractError("no choice at " + to_string(view.config) + " reaches the simulated successor");
}

}  // namespace

CompiledSystem lift_k_to_many(const System& base, std::size_t k_prime) {
  const std::size_t k = base.space->robots();
  if (k_prime < 2 * k) throw PreconditionError("lift_k_to_many needs k' >= 2k");
  auto space = std::make_shared<const ConfigSpace>(base.space->graph_ptr(), k_prime);
  if (!build_configuration_graph(*space).deterministic()) {
    throw PreconditionError("lift_k_to_many: the target system with " + std::to_string(k_prime) +
                            " robots is not deterministic");
  }
  CompiledSystem out;
  out.system.space = space;
  out.target = std::make_shared<const System>(base);
  out.description = std::to_string(k) + "-to-" + std::to_string(k_prime);

  const std::size_t heavy = k_prime - k + 1;
  // Drops the surplus from the heavy pile; also returns the automorphism used.
  auto project = [&](const Configuration& c) -> std::optional<std::pair<Configuration, const Permutation*>> {
    std::optional<Vertex> pile;
    for (Vertex v : c.positions) {
      if (static_cast<std::size_t>(std::count(c.positions.begin(), c.positions.end(), v)) >= heavy) pile = v;
    }
    if (!pile) return std::nullopt;
    Arrangement reduced;
    std::size_t drop = k_prime - k;
    for (Vertex v : c.positions) {
      if (v == *pile && drop > 0) {
        --drop;
        continue;
      }
      reduced.push_back(v);
    }
    return base.space->canonicalize_with(reduced);
  };
  for (const auto& c : space->enumerate()) {
    const auto projected = project(c);
    if (!projected) continue;
    const auto& [base_config, alpha] = *projected;
    const Permutation back = inverse(*alpha);
    out.phi.emplace(c, base_config);

    const ConfigView view = space->view(c);
    const ConfigView base_view = base.space->view(base_config);
    const Choice& base_choice = base.algorithm.at(base_config);
    const auto next = step(*base.space, base_view, base_choice);
    if (next.size() != 1) throw NondeterministicTarget("base algorithm is not deterministic at " + to_string(base_config));
    std::map<Vertex, std::vector<Vertex>> committed, loose;
    for (Vertex x : view.occupied) {
      const Vertex y = (*alpha)[x];
      const std::uint32_t own = base_view.class_of[y];
      auto it = base_choice.find(own);
      const std::uint32_t dest = it == base_choice.end() ? own : it->second;
      for (Vertex r : committed_targets(*base.space, base_view, y, dest)) committed[x].push_back(back[r]);
      for (Vertex r : resolution_targets(*base.space, base_view, y, dest)) loose[x].push_back(back[r]);
    }
    auto ok = [&](const Configuration& d) {
      const auto p = project(d);
      return p && p->first == next.front();
    };
    out.system.algorithm.set(c, lifted_choice(*space, view, {committed, loose}, ok));
  }
  return out;
}

CompiledSystem lift_path_ring(PathRingLift kind, const System& base) {
  const auto& g = base.space->graph();
  const std::size_t n = g.vertex_count();
  const std::size_t k = base.space->robots();
  LabeledGraph target_graph;
  std::vector<Vertex> anchors;
  Vertex offset = 0;
  std::string name;
  switch (kind) {
    case PathRingLift::op_to_up:
      if (!(g == oriented_path(n))) throw PreconditionError("op_to_up needs an oriented path base");
      target_graph = unoriented_path(2 * n);
      name = "op-to-up";
      break;
    case PathRingLift::op_to_or:
      if (!(g == oriented_path(n))) throw PreconditionError("op_to_or needs an oriented path base");
      if (k < 2) throw PreconditionError("op_to_or needs at least two robots");
      target_graph = oriented_ring(2 * n);
      anchors = {0};
      offset = static_cast<Vertex>(n);
      name = "op-to-or";
      break;
    case PathRingLift::up_to_ur:
      if (!(g == unoriented_path(n))) throw PreconditionError("up_to_ur needs an unoriented path base");
      if (k < 2) throw PreconditionError("up_to_ur needs at least two robots");
      target_graph = unoriented_ring(3 * n - 1);
      anchors = {0};
      offset = static_cast<Vertex>(n);
      name = "up-to-ur";
      break;
  }
  auto space = std::make_shared<const ConfigSpace>(std::move(target_graph), k + anchors.size());
  CompiledSystem out;
  out.system.space = space;
  out.target = std::make_shared<const System>(base);
  out.description = name;

  auto layout = [&](const Configuration& b) {
    Arrangement a = anchors;
    for (Vertex v : b.positions) a.push_back(offset + v);
    return a;
  };
  for (const auto& b : base.space->enumerate()) {
    auto [c, beta] = space->canonicalize_with(layout(b));
    auto [it, inserted] = out.phi.emplace(c, b);
    if (!inserted) {
      if (!(it->second == b)) {
        throw ContractError(name + ": layouts of " + to_string(it->second) + " and " + to_string(b) + " coincide");
      }
      continue;
    }
    const ConfigView base_view = base.space->view(b);
    const Choice& base_choice = base.algorithm.at(b);
    const auto next = step(*base.space, base_view, base_choice);
    if (next.size() != 1) throw NondeterministicTarget("base algorithm is not deterministic at " + to_string(b));
    std::map<Vertex, std::vector<Vertex>> committed, loose;
    for (Vertex anchor : anchors) committed[(*beta)[anchor]] = loose[(*beta)[anchor]] = {(*beta)[anchor]};
    for (Vertex u : base_view.occupied) {
      const std::uint32_t own = base_view.class_of[u];
      auto ch = base_choice.find(own);
      const std::uint32_t dest = ch == base_choice.end() ? own : ch->second;
      for (Vertex r : committed_targets(*base.space, base_view, u, dest)) committed[(*beta)[offset + u]].push_back((*beta)[offset + r]);
      for (Vertex r : resolution_targets(*base.space, base_view, u, dest)) loose[(*beta)[offset + u]].push_back((*beta)[offset + r]);
    }
    const Configuration goal = space->canonicalize(layout(next.front()));
    auto ok = [&](const Configuration& d) { return d == goal; };
    out.system.algorithm.set(c, lifted_choice(*space, space->view(c), {committed, loose}, ok));
  }
  return out;
}

}  // namespace robots
