#ifndef EONSIM_RSA_HPP
#define EONSIM_RSA_HPP

#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "eonsim/request.hpp"
#include "eonsim/spectrum.hpp"
#include "eonsim/topology.hpp"

namespace eonsim {

enum class PathMetric { hops, length };

[[nodiscard]] PathMetric parse_path_metric(std::string_view s);
[[nodiscard]] std::string_view to_string(PathMetric m);

struct Path {
  std::vector<NodeId> nodes;
  std::vector<FiberId> fibers;  // fibers[i] carries nodes[i] -> nodes[i+1]

  [[nodiscard]] std::size_t hops() const { return fibers.size(); }
  friend bool operator==(const Path&, const Path&) = default;
};

/// Single-source Dijkstra tree.
///
/// Ties are resolved the textbook way: nodes settle in (distance, node id)
/// order, neighbors are scanned by ascending id and only a strictly shorter
/// distance replaces a predecessor. The route s->d is therefore not always the
/// reverse of d->s when equal-length alternatives exist.
struct ShortestPathTree {
  NodeId source;
  std::vector<double> distance;      // by node index
  std::vector<NodeId> predecessor;   // NodeId{0} for the source
  std::vector<FiberId> via_fiber;    // fiber predecessor -> node

  [[nodiscard]] Path path_to(NodeId d) const;
};

[[nodiscard]] ShortestPathTree shortest_path_tree(const Topology& t, NodeId source, PathMetric metric);

/// Throws RoutingError for s == d or nodes outside the topology.
[[nodiscard]] Path shortest_path(const Topology& t, NodeId s, NodeId d, PathMetric metric = PathMetric::length);

/// Precomputed routes for every ordered pair.
class RouteTable {
 public:
  RouteTable(const Topology& t, PathMetric metric);
  [[nodiscard]] const Path& route(NodeId s, NodeId d) const;
  [[nodiscard]] int node_count() const { return n_; }

 private:
  int n_;
  std::vector<Path> routes_;  // row-major [s][d]
};

/// Data slots for a demand: ceil(bandwidth / slot width). Guard slots are added by the caller.
[[nodiscard]] int slots_required(double bandwidth_ghz, double slot_width_ghz);

inline constexpr int kGuardSlots = 1;

struct SlotBlock {
  int start = 0;
  int data_slots = 0;
  int guard_slots = kGuardSlots;

  [[nodiscard]] int total() const { return data_slots + guard_slots; }
  friend bool operator==(const SlotBlock&, const SlotBlock&) = default;
};

struct ActiveConnection {
  ConnectionId id = 0;
  ConnectionRequest request;
  Path path;
  SlotBlock block;
  SimTime departs_at = 0.0;
};

/// Mutable spectrum state of one simulation run: a grid per fiber plus the active-connection table.
class NetworkState {
 public:
  explicit NetworkState(const Topology& t);

  [[nodiscard]] const Topology& topology() const { return *topology_; }
  [[nodiscard]] const SpectrumGrid& grid(FiberId f) const { return grids_.at(f); }
  [[nodiscard]] const std::vector<SpectrumGrid>& grids() const { return grids_; }
  [[nodiscard]] const std::unordered_map<ConnectionId, ActiveConnection>& active() const { return active_; }

  /// First-fit start for `total_slots` contiguous slots free on every fiber of the path.
  [[nodiscard]] std::optional<int> first_fit(const Path& path, int total_slots) const;

  /// Marks the block on every fiber of `path`. Throws AllocationConflict (state unchanged) on overlap.
  const ActiveConnection& allocate(const ConnectionRequest& request, const Path& path, SlotBlock block);

  /// Frees the connection's slots. Throws UnknownConnection.
  void release(ConnectionId id);

  /// Recomputes occupancy from the active table and compares it with the grids.
  /// Empty string when consistent, otherwise a description of the first mismatch.
  [[nodiscard]] std::string audit() const;

 private:
  const Topology* topology_;
  std::vector<SpectrumGrid> grids_;
  std::unordered_map<ConnectionId, ActiveConnection> active_;
  ConnectionId next_id_ = 1;
};

}  // namespace eonsim

#endif  // EONSIM_RSA_HPP
