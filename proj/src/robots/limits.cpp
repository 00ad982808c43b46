#include "robots/errors.hpp"

#include <cstdlib>
#include <string>

namespace robots {
namespace {

std::size_t env_or(const char* name, std::size_t fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  try {
    return static_cast<std::size_t>(std::stoull(raw));
  } catch (const std::exception&) {
    return fallback;
  }
}

}  // namespace

const Limits& limits() {
  static const Limits value = [] {
    Limits l;
    l.max_vertices = env_or("ROBOTSYS_MAX_VERTICES", l.max_vertices);
    l.max_group = env_or("ROBOTSYS_MAX_GROUP", l.max_group);
    l.max_states = env_or("ROBOTSYS_MAX_STATES", l.max_states);
    return l;
  }();
  return value;
}

}  // namespace robots
