#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace robots {

/// Base class of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration or search exceeded its configured budget.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// Caller violated an operation's precondition (malformed input, bad target size, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Text input could not be parsed. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// The simulated system of a verification took a nondeterministic step.
class NondeterministicTarget : public Error {
 public:
  using Error::Error;
};

/// A construction broke one of its own invariants. Always a bug.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Resource budgets. Defaults can be overridden through environment variables:
///   ROBOTSYS_MAX_VERTICES  largest graph accepted by automorphism search
///   ROBOTSYS_MAX_GROUP     largest automorphism group materialized
///   ROBOTSYS_MAX_STATES    largest number of arrangements/configurations/search nodes
struct Limits {
  std::size_t max_vertices = 4096;
  std::size_t max_group = 2'000'000;
  std::size_t max_states = 20'000'000;
  std::size_t max_robots = 64;
};

const Limits& limits();

}  // namespace robots
