#include <cstring>
#include <sstream>

#include "robots/compilers.hpp"
#include "robots/errors.hpp"
#include "robots/io.hpp"
#include "robotsys/robotsys.h"

struct rs_graph {
  robots::LabeledGraph value;
};
struct rs_function {
  robots::FunctionSpec value;
};
struct rs_space {
  std::shared_ptr<const robots::ConfigSpace> value;
};
struct rs_cgraph {
  robots::ConfigurationGraph value;
};
struct rs_compiled {
  robots::CompiledSystem value;
};
struct rs_certificate {
  robots::Certificate value;
};

namespace {

thread_local std::string last_error;

template <typename F>
rs_status guard(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const robots::ParseError& e) {
    last_error = e.what();
    return RS_PARSE;
  } catch (const robots::ResourceLimit& e) {
    last_error = e.what();
    return RS_RESOURCE;
  } catch (const robots::PreconditionError& e) {
    last_error = e.what();
    return RS_PRECONDITION;
  } catch (const robots::NondeterministicTarget& e) {
    last_error = e.what();
    return RS_NONDETERMINISTIC;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return RS_RESOURCE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return RS_INTERNAL;
  }
}

rs_status missing(const char* what) {
  last_error = std::string("null argument: ") + what;
  return RS_PARSE;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

robots::SpaceFamily family_of(const char* name) {
  const std::string f = name ? name : "";
  if (f == "OP") return robots::SpaceFamily::OP;
  if (f == "UP") return robots::SpaceFamily::UP;
  if (f == "OR") return robots::SpaceFamily::OR;
  if (f == "UR") return robots::SpaceFamily::UR;
  throw robots::ParseError("unknown family '" + f + "' (expected OP, UP, OR or UR)", 0);
}

}  // namespace

extern "C" {

const char* rs_last_error(void) { return last_error.c_str(); }
const char* rs_version(void) { return "1.0.0"; }
void rs_string_free(char* s) { std::free(s); }

rs_status rs_graph_parse(const char* text, rs_graph** out) {
  if (!text || !out) return missing("text/out");
  return guard([&] {
    *out = new rs_graph{robots::parse_graph(text)};
    return RS_OK;
  });
}

rs_status rs_graph_family(const char* family, size_t n, rs_graph** out) {
  if (!out) return missing("out");
  return guard([&] {
    if (n == 0) throw robots::ParseError("n must be at least 1", 0);
    if (n > robots::limits().max_vertices) throw robots::ResourceLimit("n exceeds ROBOTSYS_MAX_VERTICES");
    *out = new rs_graph{robots::family_graph(family_of(family), n)};
    return RS_OK;
  });
}

rs_status rs_graph_format(const rs_graph* g, char** text) {
  if (!g || !text) return missing("graph/text");
  return guard([&] {
    *text = dup(robots::format_graph(g->value));
    return RS_OK;
  });
}

size_t rs_graph_vertex_count(const rs_graph* g) { return g ? g->value.vertex_count() : 0; }
size_t rs_graph_edge_count(const rs_graph* g) { return g ? g->value.edge_count() : 0; }

rs_status rs_graph_automorphism_count(const rs_graph* g, size_t* count) {
  if (!g || !count) return missing("graph/count");
  return guard([&] {
    *count = robots::automorphism_group(g->value).size();
    return RS_OK;
  });
}

rs_status rs_graph_girth(const rs_graph* g, size_t* girth) {
  if (!g || !girth) return missing("graph/girth");
  return guard([&] {
    const std::size_t value = robots::girth(g->value);
    *girth = value == robots::kInfiniteGirth ? SIZE_MAX : value;
    return RS_OK;
  });
}

rs_status rs_graph_quotient(const rs_graph* g, size_t bound, size_t* classes, size_t* longest_path) {
  if (!g || !classes || !longest_path) return missing("graph/classes/longest_path");
  return guard([&] {
    const auto q = robots::quotient_graph(g->value);
    *classes = q.classes.size();
    *longest_path = robots::longest_quotient_subpath(g->value, bound);
    return RS_OK;
  });
}

void rs_graph_free(rs_graph* g) { delete g; }

rs_status rs_function_parse(const char* text, rs_function** out) {
  if (!text || !out) return missing("text/out");
  return guard([&] {
    *out = new rs_function{robots::parse_function(text)};
    return RS_OK;
  });
}

rs_status rs_function_from_table(const uint32_t* table, size_t n, rs_function** out) {
  if ((!table && n) || !out) return missing("table/out");
  return guard([&] {
    robots::FunctionSpec f{std::vector<robots::Vertex>(table, table + n)};
    try {
      f.validate();
    } catch (const robots::PreconditionError& e) {
      throw robots::ParseError(e.what(), 0);
    }
    *out = new rs_function{std::move(f)};
    return RS_OK;
  });
}

rs_status rs_function_format(const rs_function* f, char** text) {
  if (!f || !text) return missing("function/text");
  return guard([&] {
    *text = dup(robots::format_function(f->value));
    return RS_OK;
  });
}

size_t rs_function_size(const rs_function* f) { return f ? f->value.size() : 0; }

rs_status rs_function_network(const rs_function* f, rs_graph** out) {
  if (!f || !out) return missing("function/out");
  return guard([&] {
    *out = new rs_graph{robots::LabeledGraph::function_network(f->value.table)};
    return RS_OK;
  });
}

void rs_function_free(rs_function* f) { delete f; }

rs_status rs_space_create(const rs_graph* g, size_t robots_count, rs_space** out) {
  if (!g || !out) return missing("graph/out");
  return guard([&] {
    *out = new rs_space{std::make_shared<const robots::ConfigSpace>(g->value, robots_count)};
    return RS_OK;
  });
}

rs_status rs_space_count(const rs_space* s, uint64_t* count) {
  if (!s || !count) return missing("space/count");
  return guard([&] {
    *count = s->value->enumerate().size();
    return RS_OK;
  });
}

rs_status rs_space_list(const rs_space* s, char** text) {
  if (!s || !text) return missing("space/text");
  return guard([&] {
    std::string out;
    for (const auto& c : s->value->enumerate()) out += robots::config_id(c) + "\n";
    *text = dup(out);
    return RS_OK;
  });
}

void rs_space_free(rs_space* s) { delete s; }

rs_status rs_closed_form_count(const char* family, uint64_t n, uint64_t robots_count, char** decimal) {
  if (!decimal) return missing("decimal");
  return guard([&] {
    if (n == 0 || robots_count == 0) throw robots::ParseError("n and k must be at least 1", 0);
    *decimal = dup(robots::closed_form_count(family_of(family), n, robots_count).str());
    return RS_OK;
  });
}

rs_status rs_cgraph_build(const rs_space* s, rs_cgraph** out) {
  if (!s || !out) return missing("space/out");
  return guard([&] {
    *out = new rs_cgraph{robots::build_configuration_graph(*s->value)};
    return RS_OK;
  });
}

size_t rs_cgraph_node_count(const rs_cgraph* c) { return c ? c->value.nodes.size() : 0; }

size_t rs_cgraph_edge_count(const rs_cgraph* c, int deterministic_only) {
  if (!c) return 0;
  const auto& edges = deterministic_only ? c->value.det_edges : c->value.edges;
  std::size_t count = 0;
  for (const auto& [a, b] : edges) count += a != b;
  return count;
}

int rs_cgraph_deterministic(const rs_cgraph* c) { return c && c->value.deterministic() ? 1 : 0; }

rs_status rs_cgraph_dot(const rs_cgraph* c, int self_loops, int deterministic_only, char** text) {
  if (!c || !text) return missing("cgraph/text");
  return guard([&] {
    robots::DotOptions options;
    options.self_loops = self_loops != 0;
    options.deterministic_only = deterministic_only != 0;
    *text = dup(robots::to_dot(c->value, options));
    return RS_OK;
  });
}

rs_status rs_cgraph_check(const rs_space* s, const rs_cgraph* c, size_t cycle_length, char** report) {
  if (!s || !c || !report) return missing("space/cgraph/report");
  return guard([&] {
    const auto r = robots::structure_checks(*s->value, c->value, cycle_length);
    std::ostringstream out;
    out << "grid " << (r.grid ? (*r.grid ? "true" : "false") : "n/a") << "\n";
    out << "path_union " << (r.paths.holds ? "true" : "false") << "\n";
    out << "path_components";
    for (auto size : r.paths.component_sizes) out << " " << size;
    out << "\n";
    out << "cycle_geq_" << r.cycle_threshold << " " << (r.cycle_geq ? "true" : "false") << "\n";
    *report = dup(out.str());
    return RS_OK;
  });
}

void rs_cgraph_free(rs_cgraph* c) { delete c; }

rs_status rs_compile(const rs_function* f, rs_target target, const rs_graph* host, uint64_t seed, rs_compiled** out) {
  if (!f || !out) return missing("function/out");
  return guard([&] {
    robots::OrientedPathOptions options;
    options.grid.seed = seed;
    robots::CompiledSystem c;
    switch (target) {
      case RS_TARGET_COMPLETE: c = robots::compile_complete(f->value); break;
      case RS_TARGET_OP: c = robots::compile_oriented_path(f->value, options); break;
      case RS_TARGET_OR: c = robots::compile_oriented_ring(f->value); break;
      case RS_TARGET_UP: c = robots::compile_unoriented(f->value, robots::UnorientedTarget::path, options); break;
      case RS_TARGET_UR: c = robots::compile_unoriented(f->value, robots::UnorientedTarget::ring, options); break;
      case RS_TARGET_MINSIZE: c = robots::compile_min_size(f->value, options.grid); break;
      case RS_TARGET_QUOTIENT_PATH:
      case RS_TARGET_GIRTH:
        if (!host) throw robots::ParseError("this target needs a host graph", 0);
        c = target == RS_TARGET_GIRTH ? robots::compile_large_girth(f->value, host->value, options)
                                      : robots::compile_long_quotient_path(f->value, host->value, options);
        break;
      default: throw robots::ParseError("unknown target", 0);
    }
    *out = new rs_compiled{std::move(c)};
    return RS_OK;
  });
}

size_t rs_compiled_vertex_count(const rs_compiled* c) { return c ? c->value.vertex_count() : 0; }
size_t rs_compiled_robots(const rs_compiled* c) { return c ? c->value.robots() : 0; }
size_t rs_compiled_phi_size(const rs_compiled* c) { return c ? c->value.phi.size() : 0; }

rs_status rs_compiled_graph(const rs_compiled* c, rs_graph** out) {
  if (!c || !out) return missing("compiled/out");
  return guard([&] {
    *out = new rs_graph{c->value.system.space->graph()};
    return RS_OK;
  });
}

rs_status rs_compiled_target_graph(const rs_compiled* c, rs_graph** out) {
  if (!c || !out) return missing("compiled/out");
  return guard([&] {
    if (!c->value.target) throw robots::PreconditionError("compiled system has no target");
    *out = new rs_graph{c->value.target->space->graph()};
    return RS_OK;
  });
}

rs_status rs_compiled_description(const rs_compiled* c, char** text) {
  if (!c || !text) return missing("compiled/text");
  return guard([&] {
    *text = dup(c->value.description);
    return RS_OK;
  });
}

rs_status rs_compiled_save(const rs_compiled* c, const char* dir) {
  if (!c || !dir) return missing("compiled/dir");
  return guard([&] {
    robots::save_compiled(dir, c->value);
    return RS_OK;
  });
}

rs_status rs_compiled_load(const char* dir, rs_compiled** out) {
  if (!dir || !out) return missing("dir/out");
  return guard([&] {
    *out = new rs_compiled{robots::load_compiled(dir)};
    return RS_OK;
  });
}

void rs_compiled_free(rs_compiled* c) { delete c; }

int rs_check_opt2(size_t system_vertices, size_t n) { return robots::check_opt2(system_vertices, n) ? 1 : 0; }

rs_status rs_verify_function(const rs_compiled* c, const rs_function* f, rs_certificate** out) {
  if (!c || !f || !out) return missing("compiled/function/out");
  return guard([&] {
    *out = new rs_certificate{robots::verify_function_computation(c->value, f->value)};
    return RS_OK;
  });
}

rs_status rs_verify(const rs_compiled* c, rs_certificate** out) {
  if (!c || !out) return missing("compiled/out");
  return guard([&] {
    *out = new rs_certificate{robots::verify_simulation(c->value)};
    return RS_OK;
  });
}

int rs_certificate_pass(const rs_certificate* cert) { return cert && cert->value.pass ? 1 : 0; }

rs_status rs_certificate_format(const rs_certificate* cert, char** text) {
  if (!cert || !text) return missing("certificate/text");
  return guard([&] {
    *text = dup(robots::format_certificate(cert->value));
    return RS_OK;
  });
}

void rs_certificate_free(rs_certificate* cert) { delete cert; }

}  // extern "C"
