#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace hyperham {

/// Vertices are dense ids 0..n-1.
using Vertex = std::uint32_t;
using Triple = std::array<Vertex, 3>;
using VertexPair = std::pair<Vertex, Vertex>;

/// Raised when an exact or exhaustive routine is asked to run past its size cap.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation's documented precondition does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Triple sorted_triple(Vertex a, Vertex b, Vertex c) {
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  return {a, b, c};
}

}  // namespace hyperham
