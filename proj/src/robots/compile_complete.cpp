#include <limits>

#include "robots/compilers.hpp"
#include "robots/errors.hpp"

namespace robots {

CompiledSystem compile_complete(const FunctionSpec& f) {
  f.validate();
  const std::size_t n = f.size();
  auto space = std::make_shared<const ConfigSpace>(complete_with_danglers(n), 1);
  CompiledSystem out;
  out.system.space = space;
  out.target = std::make_shared<const System>(function_system(f));
  out.description = "complete";
  for (Vertex i = 0; i < n; ++i) {
    const Configuration c = space->canonicalize(std::vector<Vertex>{i});
    out.phi.emplace(c, Configuration{{i}});
    if (f(i) == i) continue;
    const ConfigView view = space->view(c);
    const Vertex here = c.positions.front();
    out.system.algorithm.set(c, Choice{{view.class_of[here], view.class_of[f(i)]}});
  }
  return out;
}

bool check_opt2(std::size_t system_vertices, std::size_t n) {
  std::size_t factorial = 1;
  for (std::size_t i = 2; i <= system_vertices; ++i) {
    if (factorial >= n) return true;
    if (factorial > std::numeric_limits<std::size_t>::max() / i) return true;
    factorial *= i;
  }
  return factorial >= n;
}

}  // namespace robots
