#include "robots/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "robots/errors.hpp"

namespace robots {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::istringstream words(raw);
    Line line{number, {}};
    std::string w;
    while (words >> w) line.tokens.push_back(w);
    if (line.tokens.empty() || line.tokens.front().front() == '#') continue;
    out.push_back(std::move(line));
  }
  return out;
}

std::uint64_t number(const std::string& token, std::size_t line, const char* what) {
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError(std::string("expected a non-negative integer for ") + what + ", got '" + token + "'", line);
  }
  try {
    return std::stoull(token);
  } catch (const std::exception&) {
    throw ParseError(std::string(what) + " out of range: '" + token + "'", line);
  }
}

void expect(const Line& l, std::size_t count, const char* form) {
  if (l.tokens.size() != count) throw ParseError(std::string("expected '") + form + "'", l.number);
}

Configuration config_at(const ConfigSpace& space, const std::string& token, std::size_t line) {
  try {
    return space.parse(token);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), line);
  }
}

}  // namespace

LabeledGraph parse_graph(const std::string& text) {
  const auto lines = tokenize(text);
  if (lines.empty() || lines[0].tokens[0] != "graph") throw ParseError("expected 'graph <vertex_count>'", 1);
  expect(lines[0], 2, "graph <vertex_count>");
  const std::uint64_t n = number(lines[0].tokens[1], lines[0].number, "vertex count");
  if (n == 0) throw ParseError("a graph needs at least one vertex", lines[0].number);
  if (n > limits().max_vertices) {
    throw ResourceLimit("graph of " + std::to_string(n) + " vertices exceeds ROBOTSYS_MAX_VERTICES");
  }
  struct Edge {
    std::uint64_t u, v, luv, lvu;
    std::size_t line;
  };
  std::vector<Edge> edges;
  bool directed = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.tokens[0] == "directed-semantics") {
      expect(l, 1, "directed-semantics");
      directed = true;
    } else if (l.tokens[0] == "e") {
      expect(l, 5, "e <u> <v> <label_uv> <label_vu>");
      Edge e{number(l.tokens[1], l.number, "u"), number(l.tokens[2], l.number, "v"),
             number(l.tokens[3], l.number, "label_uv"), number(l.tokens[4], l.number, "label_vu"), l.number};
      if (e.u >= n || e.v >= n) throw ParseError("edge references a missing vertex", l.number);
      if (e.u == e.v) throw ParseError("self-loops are not edges", l.number);
      edges.push_back(e);
    } else {
      throw ParseError("unknown directive '" + l.tokens[0] + "'", l.number);
    }
  }
  if (directed) {
    std::vector<Vertex> f(n);
    std::vector<bool> has_arc(n, false);
    for (Vertex x = 0; x < n; ++x) f[x] = x;
    for (const auto& e : edges) {
      if (has_arc[e.u]) throw ParseError("vertex " + std::to_string(e.u) + " has two out-arcs", e.line);
      if (e.luv != e.v || e.lvu != e.u) throw ParseError("arc labels must be '<v> <u>'", e.line);
      has_arc[e.u] = true;
      f[e.u] = static_cast<Vertex>(e.v);
    }
    return LabeledGraph::function_network(f);
  }
  LabeledGraph g(n);
  for (const auto& e : edges) {
    try {
      g.add_edge(static_cast<Vertex>(e.u), static_cast<Vertex>(e.v), e.luv, e.lvu);
    } catch (const PreconditionError& err) {
      throw ParseError(err.what(), e.line);
    }
  }
  return g;
}

std::string format_graph(const LabeledGraph& g) {
  std::ostringstream out;
  out << "graph " << g.vertex_count() << "\n";
  if (g.directed_semantics()) {
    out << "directed-semantics\n";
    for (Vertex x = 0; x < g.vertex_count(); ++x) {
      const Vertex y = g.successor(x);
      if (y != x) out << "e " << x << " " << y << " " << y << " " << x << "\n";
    }
    return out.str();
  }
  for (const auto& [u, v] : g.edges()) {
    out << "e " << u << " " << v << " " << *g.label(u, v) << " " << *g.label(v, u) << "\n";
  }
  return out.str();
}

FunctionSpec parse_function(const std::string& text) {
  const auto lines = tokenize(text);
  if (lines.empty() || lines[0].tokens[0] != "function") throw ParseError("expected 'function <n>'", 1);
  expect(lines[0], 2, "function <n>");
  const std::uint64_t n = number(lines[0].tokens[1], lines[0].number, "n");
  if (n == 0) throw ParseError("a function needs a non-empty domain", lines[0].number);
  if (lines.size() != n + 1) {
    throw ParseError("expected " + std::to_string(n) + " lines '<i> <f(i)>', found " + std::to_string(lines.size() - 1),
                     lines.back().number);
  }
  FunctionSpec f;
  for (std::size_t i = 1; i <= n; ++i) {
    const Line& l = lines[i];
    expect(l, 2, "<i> <f(i)>");
    if (number(l.tokens[0], l.number, "i") != i - 1) {
      throw ParseError("expected argument " + std::to_string(i - 1), l.number);
    }
    const std::uint64_t y = number(l.tokens[1], l.number, "f(i)");
    if (y >= n) throw ParseError("f(" + std::to_string(i - 1) + ") is outside N_" + std::to_string(n), l.number);
    f.table.push_back(static_cast<Vertex>(y));
  }
  return f;
}

std::string format_function(const FunctionSpec& f) {
  std::ostringstream out;
  out << "function " << f.size() << "\n";
  for (Vertex x = 0; x < f.size(); ++x) out << x << " " << f(x) << "\n";
  return out.str();
}

Algorithm parse_algorithm(const ConfigSpace& space, const std::string& text) {
  Algorithm a;
  std::map<Configuration, Choice> table;
  for (const auto& l : tokenize(text)) {
    expect(l, 4, "<config-id> <class-id> -> <class-id>");
    if (l.tokens[2] != "->") throw ParseError("expected '->'", l.number);
    const Configuration c = config_at(space, l.tokens[0], l.number);
    const ConfigView view = space.view(c);
    const auto from = number(l.tokens[1], l.number, "class-id");
    const auto to = number(l.tokens[3], l.number, "class-id");
    if (from >= view.classes.size() || to >= view.classes.size()) {
      throw ParseError("class-id out of range for " + to_string(c), l.number);
    }
    const auto occupied = view.occupied_classes();
    if (!std::binary_search(occupied.begin(), occupied.end(), static_cast<std::uint32_t>(from))) {
      throw ParseError("class " + std::to_string(from) + " holds no robot in " + to_string(c), l.number);
    }
    Choice& choice = table[c];
    if (choice.count(static_cast<std::uint32_t>(from))) throw ParseError("class assigned twice", l.number);
    choice[static_cast<std::uint32_t>(from)] = static_cast<std::uint32_t>(to);
  }
  for (auto& [c, choice] : table) a.set(c, std::move(choice));
  return a;
}

std::string format_algorithm(const ConfigSpace&, const Algorithm& algorithm) {
  std::ostringstream out;
  for (const auto& [c, choice] : algorithm.table()) {
    for (const auto& [from, to] : choice) {
      if (from != to) out << config_id(c) << " " << from << " -> " << to << "\n";
    }
  }
  return out.str();
}

SimulationMap parse_phi(const ConfigSpace& space, const ConfigSpace& target, const std::string& text) {
  SimulationMap phi;
  for (const auto& l : tokenize(text)) {
    expect(l, 3, "<config-id> -> <target-id>");
    if (l.tokens[1] != "->") throw ParseError("expected '->'", l.number);
    const Configuration c = config_at(space, l.tokens[0], l.number);
    const Configuration d = config_at(target, l.tokens[2], l.number);
    if (!phi.emplace(c, d).second) throw ParseError("configuration mapped twice", l.number);
  }
  return phi;
}

std::string format_phi(const SimulationMap& phi) {
  std::ostringstream out;
  for (const auto& [c, d] : phi) out << config_id(c) << " -> " << config_id(d) << "\n";
  return out.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot read " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot write " + path.string());
  out << content;
  if (!out) throw PreconditionError("failed writing " + path.string());
}

namespace {

std::string format_system_info(std::size_t robots, const std::string& description) {
  return "robots " + std::to_string(robots) + "\ndescription " + description + "\n";
}

std::pair<std::size_t, std::string> parse_system_info(const std::string& text) {
  std::optional<std::size_t> robots;
  std::string description;
  for (const auto& l : tokenize(text)) {
    if (l.tokens[0] == "robots") {
      expect(l, 2, "robots <k>");
      robots = number(l.tokens[1], l.number, "k");
    } else if (l.tokens[0] == "description") {
      for (std::size_t i = 1; i < l.tokens.size(); ++i) description += (i > 1 ? " " : "") + l.tokens[i];
    } else {
      throw ParseError("unknown directive '" + l.tokens[0] + "'", l.number);
    }
  }
  if (!robots || *robots == 0) throw ParseError("system file needs 'robots <k>' with k >= 1", 0);
  return {*robots, description};
}

System load_system(const std::filesystem::path& dir, const std::string& prefix, std::string* description) {
  auto in_file = [&](const char* name) {
    const auto path = dir / (prefix + name);
    try {
      return read_file(path);
    } catch (const PreconditionError&) {
      throw ParseError("missing " + path.string(), 0);
    }
  };
  auto wrap = [&](const char* name, auto&& fn) {
    try {
      return fn();
    } catch (const ParseError& e) {
      throw ParseError((dir / (prefix + name)).string() + ": " + e.what(), 0);
    }
  };
  const auto [robots, desc] = wrap("system.txt", [&] { return parse_system_info(in_file("system.txt")); });
  if (description) *description = desc;
  auto graph = wrap("graph.txt", [&] { return parse_graph(in_file("graph.txt")); });
  auto space = std::make_shared<const ConfigSpace>(std::move(graph), robots);
  System s{space, {}};
  s.algorithm = wrap("algorithm.txt", [&] { return parse_algorithm(*space, in_file("algorithm.txt")); });
  return s;
}

void save_system(const std::filesystem::path& dir, const std::string& prefix, const System& s,
                 const std::string& description) {
  write_file(dir / (prefix + "system.txt"), format_system_info(s.space->robots(), description));
  write_file(dir / (prefix + "graph.txt"), format_graph(s.space->graph()));
  write_file(dir / (prefix + "algorithm.txt"), format_algorithm(*s.space, s.algorithm));
}

}  // namespace

void save_compiled(const std::filesystem::path& dir, const CompiledSystem& compiled) {
  if (!compiled.target) throw PreconditionError("compiled system has no target");
  std::filesystem::create_directories(dir);
  save_system(dir, "", compiled.system, compiled.description);
  save_system(dir, "target-", *compiled.target, "");
  write_file(dir / "phi.txt", format_phi(compiled.phi));
}

CompiledSystem load_compiled(const std::filesystem::path& dir) {
  CompiledSystem out;
  out.system = load_system(dir, "", &out.description);
  out.target = std::make_shared<const System>(load_system(dir, "target-", nullptr));
  try {
    out.phi = parse_phi(*out.system.space, *out.target->space, read_file(dir / "phi.txt"));
  } catch (const ParseError& e) {
    throw ParseError((dir / "phi.txt").string() + ": " + e.what(), 0);
  } catch (const PreconditionError&) {
    throw ParseError("missing " + (dir / "phi.txt").string(), 0);
  }
  return out;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace robots
