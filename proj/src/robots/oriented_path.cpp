#include <algorithm>

#include "robots/compilers.hpp"
#include "robots/errors.hpp"

namespace robots {

OrientedPathCompilation compile_oriented_path_detailed(const FunctionSpec& f, const OrientedPathOptions& options) {
  f.validate();
  OrientedPathCompilation out;
  out.reduced = reduce_degree(f);
  GridOptions grid = options.grid;
  if (options.block) grid.max_width = std::min(grid.max_width.value_or(*options.block), *options.block);
  out.drawing = grid_embed(out.reduced, grid);
  out.block = options.block.value_or(out.drawing.width);

  const std::size_t w = out.block;
  auto space = std::make_shared<const ConfigSpace>(oriented_path(2 * w), 2);
  auto config = [&](GridPoint p) { return Configuration{{p.first, static_cast<Vertex>(w + p.second)}}; };

  CompiledSystem& sys = out.compiled;
  sys.system.space = space;
  sys.target = std::make_shared<const System>(function_system(f));
  sys.description = "oriented-path";
  for (Vertex r = 0; r < out.reduced.vertex_count(); ++r) {
    sys.phi.emplace(config(out.drawing.placement[r]), Configuration{{out.reduced.contraction[r]}});
  }
  for (const auto& route : out.drawing.routes) {
    const Configuration image{{out.reduced.contraction[route.from]}};
    for (std::size_t i = 0; i + 1 < route.points.size(); ++i) {
      const Configuration here = config(route.points[i]);
      if (i > 0) sys.phi.emplace(here, image);
      const ConfigView view = space->view(here);
      auto choice = deterministic_choice(*space, view, config(route.points[i + 1]));
      if (!choice) throw ContractError("grid step from " + to_string(here) + " is not deterministic");
      sys.system.algorithm.set(here, std::move(*choice));
    }
  }
  return out;
}

CompiledSystem compile_oriented_path(const FunctionSpec& f, const OrientedPathOptions& options) {
  return compile_oriented_path_detailed(f, options).compiled;
}

CompiledSystem compile_unoriented(const FunctionSpec& f, UnorientedTarget target, const OrientedPathOptions& options) {
  const CompiledSystem path = compile_oriented_path(f, options);
  const CompiledSystem up = lift_path_ring(PathRingLift::op_to_up, path.system);
  CompiledSystem out = compose(up, path);
  out.description = "unoriented-path";
  if (target == UnorientedTarget::path) return out;
  const CompiledSystem ur = lift_path_ring(PathRingLift::up_to_ur, up.system);
  out = compose(ur, out);
  out.description = "unoriented-ring";
  return out;
}

}  // namespace robots
