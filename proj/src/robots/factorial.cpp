#include <algorithm>

#include "robots/compilers.hpp"
#include "robots/errors.hpp"

namespace robots {

std::vector<std::vector<Vertex>> sjt_sequence(std::size_t n) {
  if (n == 0) throw PreconditionError("sjt_sequence needs n >= 1");
  std::size_t total = 1;
  for (std::size_t i = 2; i <= n; ++i) {
    total *= i;
    if (total > limits().max_states) throw ResourceLimit(std::to_string(n) + "! permutations exceed budget");
  }
  std::vector<Vertex> perm(n);
  for (Vertex i = 0; i < n; ++i) perm[i] = i;
  std::vector<int> dir(n, -1);  // per value
  std::vector<std::vector<Vertex>> out{perm};
  while (true) {
    std::optional<std::size_t> mobile;
    for (std::size_t i = 0; i < n; ++i) {
      const long j = static_cast<long>(i) + dir[perm[i]];
      if (j < 0 || j >= static_cast<long>(n) || perm[j] > perm[i]) continue;
      if (!mobile || perm[i] > perm[*mobile]) mobile = i;
    }
    if (!mobile) break;
    const Vertex value = perm[*mobile];
    std::swap(perm[*mobile], perm[*mobile + dir[value]]);
    for (Vertex v = value + 1; v < n; ++v) dir[v] = -dir[v];
    out.push_back(perm);
  }
  return out;
}

CompiledSystem compile_factorial_path(const System& base) {
  const std::size_t vertices = base.space->graph().vertex_count();
  const std::size_t k = base.space->robots();
  std::size_t m = 2, factorial = 2;
  while (factorial < vertices) factorial *= ++m;
  if (factorial != vertices || !(base.space->graph() == oriented_path(vertices))) {
    throw PreconditionError("compile_factorial_path needs a base on OP(m!, k) with m >= 2");
  }
  const auto perms = sjt_sequence(m);
  const std::size_t per_path = m * (m - 1) / 2;
  auto space = std::make_shared<const ConfigSpace>(oriented_path(k * m), k * per_path);

  auto encode = [&](const std::vector<Vertex>& tuple) {
    Configuration c;
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t p = 0; p < m; ++p) {
        c.positions.insert(c.positions.end(), perms[tuple[j]][p], static_cast<Vertex>(j * m + p));
      }
    }
    std::sort(c.positions.begin(), c.positions.end());
    return c;
  };

  CompiledSystem out;
  out.system.space = space;
  out.target = std::make_shared<const System>(base);
  out.description = "factorial";

  std::vector<Vertex> tuple(k, 0);
  while (true) {
    const Configuration here = encode(tuple);
    const Configuration image = base.space->canonicalize(tuple);
    out.phi.emplace(here, image);

    const ConfigView base_view = base.space->view(image);
    const Choice& base_choice = base.algorithm.at(image);
    std::vector<Vertex> moved(k);
    for (std::size_t j = 0; j < k; ++j) {
      const std::uint32_t own = base_view.class_of[tuple[j]];
      auto it = base_choice.find(own);
      const auto targets = resolution_targets(*base.space, base_view, tuple[j], it == base_choice.end() ? own : it->second);
      if (targets.size() != 1) throw PreconditionError("base algorithm is not deterministic at " + to_string(image));
      moved[j] = targets.front();
    }
    if (moved != tuple) {
      const ConfigView view = space->view(here);
      Choice choice;
      for (std::size_t j = 0; j < k; ++j) {
        if (moved[j] == tuple[j]) continue;
        const auto& a = perms[tuple[j]];
        const auto& b = perms[moved[j]];
        std::size_t p = 0;
        while (p < m && a[p] == b[p]) ++p;
        const Vertex left = static_cast<Vertex>(j * m + p);
        if (a[p] > 0) choice[view.class_of[left]] = view.class_of[left + 1];
        if (a[p + 1] > 0) choice[view.class_of[left + 1]] = view.class_of[left];
      }
      const auto outcomes = step(*space, view, choice);
      if (outcomes.size() != 1 || !(outcomes.front() == encode(moved))) {
        throw ContractError("pile swap at " + to_string(here) + " does not reach the encoded successor");
      }
      out.system.algorithm.set(here, std::move(choice));
    }

    std::size_t j = 0;
    while (j < k && ++tuple[j] == vertices) tuple[j++] = 0;
    if (j == k) break;
  }
  return out;
}

MinSizeParameters min_size_parameters(std::size_t n) {
  if (n == 0) throw PreconditionError("min_size_parameters needs n >= 1");
  std::size_t m = 1, factorial = 1;
  while (factorial < 2 * n) factorial *= ++m;
  return {m, 2 * m, m * (m - 1)};
}

CompiledSystem compile_min_size(const FunctionSpec& f, const GridOptions& grid) {
  f.validate();
  const MinSizeParameters params = min_size_parameters(f.size());
  std::size_t factorial = 1;
  for (std::size_t i = 2; i <= params.m; ++i) factorial *= i;
  OrientedPathOptions options{grid, factorial / 2};
  const CompiledSystem path = compile_oriented_path(f, options);
  const CompiledSystem encoded = compile_factorial_path(path.system);
  CompiledSystem out = compose(encoded, path);
  out.description = "min-size";
  return out;
}

}  // namespace robots
