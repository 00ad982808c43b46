#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "robotsys/robotsys.h"

namespace {

constexpr const char* kFormats = R"(File formats:
  graph file
    graph <vertex_count>
    e <u> <v> <label_uv> <label_vu>     one line per edge, vertices 0..vertex_count-1
    directed-semantics                  optional; each e line is then the arc u -> f(u)
                                        written 'e <u> <f(u)> <f(u)> <u>', and vertices
                                        without an arc are fixed points
  function file
    function <n>
    <i> <f(i)>                          n lines, i = 0..n-1 in order
  compiled-system directory
    system.txt         robots <k>
                       description <text>
    graph.txt          graph file of the robots' graph
    algorithm.txt      <config-id> <class-id> -> <class-id>    non-stay choices only
    phi.txt            <config-id> -> <target-id>
    target-system.txt, target-graph.txt, target-algorithm.txt  the simulated system
  A config-id is the sorted vertex list of a canonical configuration joined by
  commas, e.g. 0,3. A class-id numbers the vertex classes of a configuration by
  their smallest vertex. Blank lines and lines starting with '#' are ignored.

Exit codes: 0 success or PASS, 1 FAIL, 2 usage or parse error, 3 resource limit.
Budgets: ROBOTSYS_MAX_VERTICES, ROBOTSYS_MAX_GROUP, ROBOTSYS_MAX_STATES.
)";

struct Failure {
  int code;
  std::string message;
};

int exit_code(rs_status s) {
  switch (s) {
    case RS_OK: return 0;
    case RS_FAIL: return 1;
    case RS_RESOURCE: return 3;
    case RS_INTERNAL: return 1;
    default: return 2;
  }
}

const char* status_name(rs_status s) {
  switch (s) {
    case RS_PARSE: return "parse error";
    case RS_RESOURCE: return "resource limit";
    case RS_PRECONDITION: return "precondition violated";
    case RS_NONDETERMINISTIC: return "nondeterministic target";
    case RS_INTERNAL: return "internal error";
    default: return "error";
  }
}

void check(rs_status s) {
  if (s != RS_OK) throw Failure{exit_code(s), std::string(status_name(s)) + ": " + rs_last_error()};
}

template <typename T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(ptr); }
  T** out() { return &ptr; }
  T* get() const { return ptr; }
};

using Graph = Handle<rs_graph, rs_graph_free>;
using Function = Handle<rs_function, rs_function_free>;
using Space = Handle<rs_space, rs_space_free>;
using CGraph = Handle<rs_cgraph, rs_cgraph_free>;
using Compiled = Handle<rs_compiled, rs_compiled_free>;
using Certificate = Handle<rs_certificate, rs_certificate_free>;

std::string take(char* s) {
  std::string out = s ? s : "";
  rs_string_free(s);
  return out;
}

std::string fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

class Report {
 public:
  void line(const std::string& key, const std::string& value) { out_ << key << " " << value << "\n"; }
  void input(const std::string& path, const std::string& bytes) { line("input", path + " fnv1a64 " + fnv1a(bytes)); }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

std::string read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{2, "cannot read " + path};
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << content)) throw Failure{2, "cannot write " + path};
}

struct GraphSource {
  std::string file;
  std::string family;
  std::size_t n = 0;

  void add(CLI::App* cmd) {
    cmd->add_option("--graph", file, "graph file");
    cmd->add_option("--family", family, "OP, UP, OR or UR")->check(CLI::IsMember({"OP", "UP", "OR", "UR"}));
    cmd->add_option("--n", n, "number of vertices of the family graph");
  }

  void load(Graph& g, Report& report) const {
    if (!file.empty() == !family.empty()) throw Failure{2, "give exactly one of --graph or --family"};
    if (!file.empty()) {
      const std::string text = read(file);
      report.input(file, text);
      check(rs_graph_parse(text.c_str(), g.out()));
    } else {
      if (n == 0) throw Failure{2, "--family needs --n >= 1"};
      check(rs_graph_family(family.c_str(), n, g.out()));
    }
  }
};

void load_function(const std::string& path, Function& f, Report& report) {
  const std::string text = read(path);
  report.input(path, text);
  check(rs_function_parse(text.c_str(), f.out()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Oblivious robots on labeled graphs: configuration spaces, configuration graphs, function compilers and a simulation verifier."};
  app.footer(kFormats);
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  bool timing = false;
  std::string report_path;
  app.add_option("--seed", seed, "seed for randomized grid drawing (default 0)");
  app.add_flag("--timing", timing, "append wall-clock time to the report");
  app.add_option("--report", report_path, "also write the report to this file");

  GraphSource space_src, cgraph_src, check_src;
  std::size_t space_k = 0, cgraph_k = 0, check_k = 0, count_n = 0, count_k = 0, cycle_len = 3;
  bool list = false, deterministic = false, self_loops = false;
  std::string dot_path, count_family;

  auto* space = app.add_subcommand("space", "size of the configuration space, optionally against the closed form");
  space_src.add(space);
  space->add_option("--k", space_k, "number of robots")->required();
  space->add_flag("--list", list, "list every configuration");

  auto* cgraph = app.add_subcommand("cgraph", "configuration graph and its deterministic subgraph");
  cgraph_src.add(cgraph);
  cgraph->add_option("--k", cgraph_k, "number of robots")->required();
  cgraph->add_option("--dot", dot_path, "write Graphviz output (solid deterministic, dashed otherwise)");
  cgraph->add_flag("--deterministic", deterministic, "only deterministic edges in the DOT output");
  cgraph->add_flag("--self-loops", self_loops, "keep self-loops in the DOT output");

  auto* checks = app.add_subcommand("check", "structure checks on the configuration graph");
  check_src.add(checks);
  checks->add_option("--k", check_k, "number of robots")->required();
  checks->add_option("--cycle", cycle_len, "report whether a simple cycle at least this long exists (default 3)");

  auto* count = app.add_subcommand("count", "closed-form size of a family configuration space");
  count->add_option("--family", count_family, "OP, UP, OR or UR")->required()->check(CLI::IsMember({"OP", "UP", "OR", "UR"}));
  count->add_option("--n", count_n, "number of vertices")->required();
  count->add_option("--k", count_k, "number of robots")->required();

  std::string function_path, target, host_path, out_dir;
  std::size_t robots = 2;
  auto* compile = app.add_subcommand("compile", "compile a function into a robot system");
  compile->add_option("function", function_path, "function file")->required();
  compile->add_option("--target", target, "complete, op, or, up, ur, minsize or graph")
      ->required()
      ->check(CLI::IsMember({"complete", "op", "or", "up", "ur", "minsize", "graph"}));
  compile->add_option("--host", host_path, "graph file for --target graph");
  compile->add_option("--robots", robots, "2 (quotient path) or 3 (large girth) for --target graph")
      ->check(CLI::IsMember({2, 3}));
  compile->add_option("--out", out_dir, "directory for the compiled system")->required();

  std::string verify_dir, verify_function;
  auto* verify = app.add_subcommand("verify", "check that a compiled system simulates its target");
  verify->add_option("dir", verify_dir, "compiled-system directory")->required();
  verify->add_option("--function", verify_function, "verify against the single robot computing this function");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const auto started = std::chrono::steady_clock::now();
  Report report;
  report.line("tool", std::string("robotsys ") + rs_version());
  {
    std::string command;
    for (int i = 1; i < argc; ++i) command += (i > 1 ? " " : "") + std::string(argv[i]);
    report.line("command", command);
  }
  int code = 0;
  try {
    if (*space) {
      Graph g;
      space_src.load(g, report);
      Space s;
      check(rs_space_create(g.get(), space_k, s.out()));
      std::uint64_t enumerated = 0;
      check(rs_space_count(s.get(), &enumerated));
      report.line("vertices", std::to_string(rs_graph_vertex_count(g.get())));
      report.line("robots", std::to_string(space_k));
      report.line("enumerated", std::to_string(enumerated));
      if (!space_src.family.empty()) {
        char* closed = nullptr;
        check(rs_closed_form_count(space_src.family.c_str(), space_src.n, space_k, &closed));
        const std::string value = take(closed);
        const bool match = value == std::to_string(enumerated);
        report.line("closed_form", value);
        report.line("comparison", match ? "MATCH" : "MISMATCH");
        if (!match) code = 1;
      }
      if (list) {
        char* text = nullptr;
        check(rs_space_list(s.get(), &text));
        std::istringstream lines(take(text));
        for (std::string l; std::getline(lines, l);) report.line("config", l);
      }
    } else if (*cgraph) {
      Graph g;
      cgraph_src.load(g, report);
      Space s;
      check(rs_space_create(g.get(), cgraph_k, s.out()));
      CGraph c;
      check(rs_cgraph_build(s.get(), c.out()));
      report.line("nodes", std::to_string(rs_cgraph_node_count(c.get())));
      report.line("edges", std::to_string(rs_cgraph_edge_count(c.get(), 0)));
      report.line("deterministic_edges", std::to_string(rs_cgraph_edge_count(c.get(), 1)));
      report.line("deterministic", rs_cgraph_deterministic(c.get()) ? "yes" : "no");
      if (!dot_path.empty()) {
        char* text = nullptr;
        check(rs_cgraph_dot(c.get(), self_loops, deterministic, &text));
        const std::string dot = take(text);
        write(dot_path, dot);
        report.line("dot", dot_path + " fnv1a64 " + fnv1a(dot));
      }
    } else if (*checks) {
      Graph g;
      check_src.load(g, report);
      Space s;
      check(rs_space_create(g.get(), check_k, s.out()));
      CGraph c;
      check(rs_cgraph_build(s.get(), c.out()));
      char* text = nullptr;
      check(rs_cgraph_check(s.get(), c.get(), cycle_len, &text));
      report.line("nodes", std::to_string(rs_cgraph_node_count(c.get())));
      std::istringstream lines(take(text));
      for (std::string l; std::getline(lines, l);) {
        const auto space_at = l.find(' ');
        report.line(l.substr(0, space_at), space_at == std::string::npos ? "" : l.substr(space_at + 1));
      }
    } else if (*count) {
      char* closed = nullptr;
      check(rs_closed_form_count(count_family.c_str(), count_n, count_k, &closed));
      report.line("closed_form", take(closed));
    } else if (*compile) {
      Function f;
      load_function(function_path, f, report);
      rs_target t = RS_TARGET_COMPLETE;
      if (target == "op") t = RS_TARGET_OP;
      if (target == "or") t = RS_TARGET_OR;
      if (target == "up") t = RS_TARGET_UP;
      if (target == "ur") t = RS_TARGET_UR;
      if (target == "minsize") t = RS_TARGET_MINSIZE;
      Graph host;
      if (target == "graph") {
        if (host_path.empty()) throw Failure{2, "--target graph needs --host"};
        const std::string text = read(host_path);
        report.input(host_path, text);
        check(rs_graph_parse(text.c_str(), host.out()));
        t = robots == 3 ? RS_TARGET_GIRTH : RS_TARGET_QUOTIENT_PATH;
      }
      Compiled c;
      check(rs_compile(f.get(), t, host.get(), seed, c.out()));
      check(rs_compiled_save(c.get(), out_dir.c_str()));
      char* desc = nullptr;
      check(rs_compiled_description(c.get(), &desc));
      const std::size_t vertices = rs_compiled_vertex_count(c.get());
      report.line("construction", take(desc));
      report.line("vertices", std::to_string(vertices));
      report.line("robots", std::to_string(rs_compiled_robots(c.get())));
      report.line("phi_entries", std::to_string(rs_compiled_phi_size(c.get())));
      const bool opt2 = rs_check_opt2(vertices, rs_function_size(f.get())) != 0;
      report.line("opt2", opt2 ? "holds" : "violated");
      report.line("output", out_dir);
      if (!opt2) code = 1;
    } else if (*verify) {
      Compiled c;
      check(rs_compiled_load(verify_dir.c_str(), c.out()));
      for (const char* name : {"system.txt", "graph.txt", "algorithm.txt", "phi.txt"}) {
        const std::string path = verify_dir + "/" + name;
        report.input(path, read(path));
      }
      Certificate cert;
      if (!verify_function.empty()) {
        Function f;
        load_function(verify_function, f, report);
        check(rs_verify_function(c.get(), f.get(), cert.out()));
      } else {
        check(rs_verify(c.get(), cert.out()));
      }
      char* text = nullptr;
      check(rs_certificate_format(cert.get(), &text));
      std::istringstream lines(take(text));
      for (std::string l; std::getline(lines, l);) {
        const auto space_at = l.find(' ');
        report.line(l.substr(0, space_at), l.substr(space_at + 1));
      }
      if (!rs_certificate_pass(cert.get())) code = 1;
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    report.line("error", f.message);
    code = f.code;
  }
  if (timing) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
    report.line("elapsed_ms", std::to_string(ms.count()));
  }
  report.line("exit", std::to_string(code));
  std::cout << report.str();
  if (!report_path.empty()) {
    try {
      write(report_path, report.str());
    } catch (const Failure& f) {
      std::cerr << "error: " << f.message << "\n";
      return 2;
    }
  }
  return code;
}
