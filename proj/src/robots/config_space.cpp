#include "robots/config_space.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "robots/errors.hpp"

namespace robots {

std::string config_id(const Configuration& c) {
  std::string out;
  for (std::size_t i = 0; i < c.positions.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(c.positions[i]);
  }
  return out;
}

std::string to_string(const Configuration& c) { return "(" + config_id(c) + ")"; }

std::vector<std::uint32_t> ConfigView::occupied_classes() const {
  std::vector<std::uint32_t> out;
  for (Vertex v : occupied) out.push_back(class_of[v]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ConfigSpace::ConfigSpace(std::shared_ptr<const LabeledGraph> graph, std::size_t robots)
    : graph_(std::move(graph)), robots_(robots) {
  if (!graph_ || graph_->vertex_count() == 0) throw PreconditionError("configuration space needs a non-empty graph");
  if (robots_ == 0) throw PreconditionError("configuration space needs at least one robot");
  if (robots_ > limits().max_robots) {
    throw ResourceLimit("at most " + std::to_string(limits().max_robots) + " robots supported");
  }
  group_ = automorphism_group(*graph_);
  orbit_ = orbit_index(graph_->vertex_count(), group_);
}

ConfigSpace::ConfigSpace(LabeledGraph graph, std::size_t robots)
    : ConfigSpace(std::make_shared<const LabeledGraph>(std::move(graph)), robots) {}

std::pair<Configuration, const Permutation*> ConfigSpace::canonicalize_with(
    std::span<const Vertex> arrangement) const {
  if (arrangement.size() != robots_) {
    throw PreconditionError("arrangement has " + std::to_string(arrangement.size()) + " robots, expected " +
                            std::to_string(robots_));
  }
  for (Vertex v : arrangement) {
    if (v >= graph_->vertex_count()) throw PreconditionError("robot position " + std::to_string(v) + " out of range");
  }
  std::vector<Vertex> best, buffer(robots_);
  const Permutation* witness = nullptr;
  for (const auto& perm : group_) {
    for (std::size_t r = 0; r < robots_; ++r) buffer[r] = perm[arrangement[r]];
    std::sort(buffer.begin(), buffer.end());
    if (witness == nullptr || buffer < best) {
      best = buffer;
      witness = &perm;
    }
  }
  return {Configuration{std::move(best)}, witness};
}

Configuration ConfigSpace::canonicalize(std::span<const Vertex> arrangement) const {
  return canonicalize_with(arrangement).first;
}

bool ConfigSpace::is_canonical(const Configuration& c) const {
  if (c.positions.size() != robots_) return false;
  if (!std::is_sorted(c.positions.begin(), c.positions.end())) return false;
  for (Vertex v : c.positions) {
    if (v >= graph_->vertex_count()) return false;
  }
  return canonicalize(c.positions) == c;
}

std::vector<Configuration> ConfigSpace::enumerate() const {
  const BigInt multisets = binomial(graph_->vertex_count() + robots_ - 1, robots_);
  if (multisets > limits().max_states) {
    throw ResourceLimit("configuration space of " + multisets.str() + " multisets exceeds budget " +
                        std::to_string(limits().max_states));
  }
  std::vector<Configuration> out;
  std::vector<Vertex> current(robots_, 0);
  const Vertex n = static_cast<Vertex>(graph_->vertex_count());
  auto fill = [&](auto&& self, std::size_t slot, Vertex from) -> void {
    if (slot == robots_) {
      Configuration c = canonicalize(current);
      if (c.positions == current) out.push_back(std::move(c));
      return;
    }
    for (Vertex v = from; v < n; ++v) {
      current[slot] = v;
      self(self, slot + 1, v);
    }
  };
  fill(fill, 0, 0);
  // Weakly increasing tuples are generated in lexicographic order already.
  return out;
}

ConfigView ConfigSpace::view(const Configuration& c) const {
  const std::size_t n = graph_->vertex_count();
  ConfigView v;
  v.config = c;
  for (std::size_t i = 0; i < c.positions.size(); ++i) {
    if (i == 0 || c.positions[i] != c.positions[i - 1]) {
      v.occupied.push_back(c.positions[i]);
      v.multiplicity.push_back(1);
    } else {
      ++v.multiplicity.back();
    }
  }
  auto& stabilizer = v.stabilizer;
  std::vector<Vertex> buffer(c.positions.size());
  for (const auto& perm : group_) {
    for (std::size_t r = 0; r < buffer.size(); ++r) buffer[r] = perm[c.positions[r]];
    std::sort(buffer.begin(), buffer.end());
    if (buffer == c.positions) stabilizer.push_back(perm);
  }
  v.class_of = orbit_index(n, stabilizer);
  std::uint32_t count = 0;
  for (auto id : v.class_of) count = std::max(count, id + 1);
  v.classes.resize(count);
  for (Vertex x = 0; x < n; ++x) v.classes[v.class_of[x]].push_back(x);
  return v;
}

std::vector<std::vector<Vertex>> ConfigSpace::vertex_classes(const Configuration& c) const {
  return view(c).classes;
}

std::vector<std::vector<std::uint32_t>> ConfigSpace::robot_classes(const Configuration& c) const {
  const ConfigView v = view(c);
  std::map<std::uint32_t, std::vector<std::uint32_t>> grouped;
  for (std::uint32_t r = 0; r < c.positions.size(); ++r) grouped[v.class_of[c.positions[r]]].push_back(r);
  std::vector<std::vector<std::uint32_t>> out;
  for (auto& [cls, robots] : grouped) out.push_back(std::move(robots));
  return out;
}

Configuration ConfigSpace::parse(const std::string& text) const {
  std::string body = text;
  if (!body.empty() && body.front() == '(') body.erase(body.begin());
  if (!body.empty() && body.back() == ')') body.pop_back();
  Configuration c;
  std::stringstream in(body);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const auto value = std::stoull(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      c.positions.push_back(static_cast<Vertex>(value));
    } catch (const std::exception&) {
      throw ParseError("bad configuration '" + text + "'", 0);
    }
  }
  if (!is_canonical(c)) throw ParseError("'" + text + "' is not a canonical configuration", 0);
  return c;
}

// ---------------------------------------------------------------------------

BigInt binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  BigInt out = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    out *= n - r + i;
    out /= i;
  }
  return out;
}

std::uint64_t euler_totient(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace {

// Multisets of size r over m points.
BigInt multiset_count(std::uint64_t m, std::uint64_t r) {
  if (m == 0) return r == 0 ? 1 : 0;
  return binomial(m + r - 1, r);
}

// Multisets of size k fixed by an involution with `pairs` 2-cycles and `fixed` fixed points.
BigInt involution_fixed(std::uint64_t pairs, std::uint64_t fixed, std::uint64_t k) {
  BigInt total = 0;
  for (std::uint64_t j = 0; 2 * j <= k; ++j) total += multiset_count(pairs, j) * multiset_count(fixed, k - 2 * j);
  return total;
}

// Sum over rotations of the multisets they fix: sum_{d | n, d | k} phi(d) C(n/d + k/d - 1, k/d).
BigInt rotation_fixed_sum(std::uint64_t n, std::uint64_t k) {
  BigInt total = 0;
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (n % d == 0 && k % d == 0) total += BigInt(euler_totient(d)) * multiset_count(n / d, k / d);
  }
  return total;
}

}  // namespace

BigInt closed_form_count(SpaceFamily family, std::uint64_t n, std::uint64_t k) {
  if (n == 0 || k == 0) throw PreconditionError("closed_form_count needs n, k >= 1");
  switch (family) {
    case SpaceFamily::OP:
      return binomial(n + k - 1, k);
    case SpaceFamily::OR: {
      const std::uint64_t g = std::gcd(k, n);
      BigInt total = 0;
      for (std::uint64_t d = 1; d <= g; ++d) {
        if (g % d == 0) total += BigInt(euler_totient(d)) * binomial((n + k) / d, k / d);
      }
      return total / (n + k);
    }
    case SpaceFamily::UP: {
      const BigInt all = binomial(n + k - 1, k);
      return (all + involution_fixed(n / 2, n % 2, k)) / 2;
    }
    case SpaceFamily::UR: {
      BigInt reflections = 0;
      if (n % 2 == 1) {
        reflections = BigInt(n) * involution_fixed((n - 1) / 2, 1, k);
      } else {
        reflections = BigInt(n / 2) * involution_fixed((n - 2) / 2, 2, k) +
                      BigInt(n / 2) * involution_fixed(n / 2, 0, k);
      }
      return (rotation_fixed_sum(n, k) + reflections) / (2 * n);
    }
  }
  throw PreconditionError("unknown family");
}

LabeledGraph family_graph(SpaceFamily family, std::size_t n) {
  switch (family) {
    case SpaceFamily::OP: return oriented_path(n);
    case SpaceFamily::UP: return unoriented_path(n);
    case SpaceFamily::OR: return oriented_ring(n);
    case SpaceFamily::UR: return unoriented_ring(n);
  }
  throw PreconditionError("unknown family");
}

}  // namespace robots
