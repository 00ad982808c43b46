#include <set>

#include "robots/compilers.hpp"
#include "robots/errors.hpp"

namespace robots {

namespace {

// Distances 1, 2, ... of the two-robot ring carrying copies of the vertices of
// the induced network, and the distance each one moves to next.
struct DistanceLayout {
  std::vector<Vertex> element;  // index d-1
  std::vector<std::size_t> next;

  std::size_t push(Vertex x) {
    element.push_back(x);
    next.push_back(element.size() + 1);
    return element.size();
  }
};

// Offsets 0, 2, 4, ... then the odd ones back down, so consecutive offsets differ by at most 2.
std::vector<std::size_t> zigzag(std::size_t length) {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < length; s += 2) out.push_back(s);
  const std::size_t top_odd = length % 2 == 0 ? length - 1 : length - 2;
  for (std::size_t s = top_odd; s < length; s -= 2) out.push_back(s);
  return out;
}

void lay_cycle(DistanceLayout& layout, const std::vector<Vertex>& cycle, std::size_t base) {
  const auto offsets = zigzag(cycle.size());
  layout.element.resize(base + cycle.size() - 1);
  layout.next.resize(base + cycle.size() - 1);
  for (std::size_t j = 0; j < cycle.size(); ++j) {
    const std::size_t d = base + offsets[j];
    layout.element[d - 1] = cycle[j];
    layout.next[d - 1] = base + offsets[(j + 1) % cycle.size()];
  }
}

DistanceLayout layout_for(const FunctionSpec& f) {
  const std::size_t n = f.size();
  std::vector<bool> has_preimage(n, false), on_cycle(n, false), done(n, false);
  for (Vertex x = 0; x < n; ++x) {
    if (f(x) != x) has_preimage[f(x)] = true;
  }
  for (Vertex x = 0; x < n; ++x) {
    Vertex y = x;
    for (std::size_t i = 0; i < n; ++i) y = f(y);
    on_cycle[y] = true;
  }
  DistanceLayout layout;
  for (Vertex start = 0; start < n; ++start) {
    if (done[start] || !on_cycle[start]) continue;
    std::vector<Vertex> cycle{start};
    for (Vertex y = f(start); y != start; y = f(y)) cycle.push_back(y);
    for (Vertex c : cycle) done[c] = true;
    const std::set<Vertex> members(cycle.begin(), cycle.end());

    bool any_leaf = false;
    for (Vertex leaf = 0; leaf < n; ++leaf) {
      if (on_cycle[leaf] || has_preimage[leaf]) continue;
      std::vector<Vertex> path{leaf};
      while (!on_cycle[path.back()]) path.push_back(f(path.back()));
      if (!members.count(path.back())) continue;
      any_leaf = true;
      const Vertex root = path.back();
      path.pop_back();
      for (Vertex x : path) layout.push(x);
      std::vector<Vertex> rotated{root};
      for (Vertex y = f(root); y != root; y = f(y)) rotated.push_back(y);
      lay_cycle(layout, rotated, layout.element.size() + 1);
    }
    if (!any_leaf) lay_cycle(layout, cycle, layout.element.size() + 1);
  }
  return layout;
}

}  // namespace

CompiledSystem compile_oriented_ring(const FunctionSpec& f) {
  f.validate();
  const DistanceLayout layout = layout_for(f);
  const std::size_t top = layout.element.size();
  std::size_t m = 4 * f.size() + 2;
  while (2 * top >= m) m *= 2;

  auto space = std::make_shared<const ConfigSpace>(oriented_ring(m), 2);
  auto config = [&](std::size_t d) { return space->canonicalize(std::vector<Vertex>{0, static_cast<Vertex>(d)}); };

  CompiledSystem out;
  out.system.space = space;
  out.target = std::make_shared<const System>(function_system(f));
  out.description = "oriented-ring";
  for (std::size_t d = 1; d <= top; ++d) {
    const Configuration here = config(d);
    out.phi.emplace(here, Configuration{{layout.element[d - 1]}});
    const std::size_t to = layout.next[d - 1];
    if (to == d) continue;
    auto choice = deterministic_choice(*space, space->view(here), config(to));
    if (!choice) throw ContractError("distance step " + std::to_string(d) + " -> " + std::to_string(to) + " unavailable");
    out.system.algorithm.set(here, std::move(*choice));
  }
  return out;
}

}  // namespace robots
