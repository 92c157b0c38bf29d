#ifndef EONSIM_TYPES_HPP
#define EONSIM_TYPES_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace eonsim {

/// 1-based node label, matching the numbering used for NSFNET in the literature.
struct NodeId {
  int value = 0;

  constexpr NodeId() = default;
  constexpr explicit NodeId(int v) : value(v) {}

  /// 0-based position for indexing dense vectors and matrices.
  [[nodiscard]] constexpr std::size_t index() const { return static_cast<std::size_t>(value - 1); }
  [[nodiscard]] static constexpr NodeId from_index(std::size_t i) { return NodeId(static_cast<int>(i) + 1); }

  friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

inline std::ostream& operator<<(std::ostream& os, NodeId n) { return os << n.value; }

/// Index of a directed fiber inside its Topology.
using FiberId = std::size_t;

using ConnectionId = std::uint64_t;

/// Simulation time, in units of the mean holding time (1/mu).
using SimTime = double;

// Error hierarchy. Everything derives from eonsim::Error so callers can
// catch the library's failures in one place.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : Error {
  using Error::Error;
};
struct ValidationError : Error {
  using Error::Error;
};
struct NotAdjacentError : Error {
  using Error::Error;
};
struct RoutingError : Error {
  using Error::Error;
};
/// A slot was already occupied when allocating: the engine's bookkeeping is broken.
struct AllocationConflict : Error {
  using Error::Error;
};
struct UnknownConnection : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace eonsim

#endif  // EONSIM_TYPES_HPP
