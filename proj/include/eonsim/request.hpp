#ifndef EONSIM_REQUEST_HPP
#define EONSIM_REQUEST_HPP

#include "eonsim/types.hpp"

namespace eonsim {

/// A demand req(s, d, b) together with its timing.
struct ConnectionRequest {
  NodeId source;
  NodeId destination;
  double bandwidth_ghz = 0.0;
  SimTime arrival_time = 0.0;
  SimTime holding_time = 0.0;

  friend bool operator==(const ConnectionRequest&, const ConnectionRequest&) = default;
};

}  // namespace eonsim

#endif  // EONSIM_REQUEST_HPP
