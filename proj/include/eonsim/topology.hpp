#ifndef EONSIM_TOPOLOGY_HPP
#define EONSIM_TOPOLOGY_HPP

#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eonsim/spectrum.hpp"
#include "eonsim/types.hpp"

namespace eonsim {

/// Bidirectional link; stored with a < b.
struct Link {
  NodeId a;
  NodeId b;
  double length_km = 1.0;

  friend bool operator==(const Link&, const Link&) = default;
};

/// One direction of a Link. Occupancy lives in a SpectrumGrid indexed by the fiber id.
struct Fiber {
  NodeId from;
  NodeId to;
  std::size_t link = 0;
};

struct Neighbor {
  NodeId node;
  FiberId fiber;  // the fiber leaving the owning node towards `node`
  double length_km;
};

/// Immutable connected graph. Link k is realized as fibers 2k (a->b) and 2k+1 (b->a).
class Topology {
 public:
  Topology(int node_count, std::vector<Link> links, int slot_count = kDefaultSlotCount,
           double slot_width_ghz = kDefaultSlotWidthGhz);

  [[nodiscard]] int node_count() const { return node_count_; }
  [[nodiscard]] std::span<const Link> links() const { return links_; }
  [[nodiscard]] std::span<const Fiber> fibers() const { return fibers_; }
  [[nodiscard]] const Fiber& fiber(FiberId id) const { return fibers_.at(id); }
  [[nodiscard]] int slot_count() const { return slot_count_; }
  [[nodiscard]] double slot_width_ghz() const { return slot_width_ghz_; }

  /// Neighbors of n sorted by ascending node id.
  [[nodiscard]] std::span<const Neighbor> neighbors(NodeId n) const { return adjacency_.at(n.index()); }
  [[nodiscard]] bool contains(NodeId n) const { return n.value >= 1 && n.value <= node_count_; }
  [[nodiscard]] bool adjacent(NodeId a, NodeId b) const;

  /// Directed fiber a->b; throws NotAdjacentError.
  [[nodiscard]] FiberId fiber_between(NodeId a, NodeId b) const;

  /// Fresh, all-free grids, one per fiber.
  [[nodiscard]] std::vector<SpectrumGrid> make_grids() const;

  /// Same topology with a different spectrum size.
  [[nodiscard]] Topology with_slots(int slot_count) const;

  friend bool operator==(const Topology& x, const Topology& y) {
    return x.node_count_ == y.node_count_ && x.links_ == y.links_ && x.slot_count_ == y.slot_count_ &&
           x.slot_width_ghz_ == y.slot_width_ghz_;
  }

 private:
  int node_count_;
  std::vector<Link> links_;
  std::vector<Fiber> fibers_;
  std::vector<std::vector<Neighbor>> adjacency_;
  int slot_count_;
  double slot_width_ghz_;
};

/// 14-node, 21-link NSFNET with link lengths in km.
///
/// Adjacency (1-based):
///   1-2 1-3 1-8 2-3 2-4 3-6 4-5 4-11 5-6 5-7 6-10 6-13 7-8 8-9 9-10 9-12
///   9-14 11-12 11-14 12-13 13-14
/// Length-weighted, endpoint-inclusive node betweenness on this graph is
/// 0.143 0.236 0.176 0.313 0.280 0.231 0.264 0.335 0.374 0.165 0.209
/// 0.297 0.209 0.143 for nodes 1..14 (see centrality.hpp). The commonly
/// quoted table has 0.17 for node 10.
[[nodiscard]] Topology builtin_nsfnet();

/// Resolves "nsfnet" to the built-in graph, anything else to a topology file.
[[nodiscard]] Topology topology_by_name(const std::string& name_or_path);

/// Topology text format:
///   # comment
///   nodes N
///   slots K            (optional, default 320)
///   link A B [length_km]
[[nodiscard]] Topology parse_topology(std::istream& in);
[[nodiscard]] Topology load_topology(const std::filesystem::path& path);
[[nodiscard]] std::string serialize_topology(const Topology& t);

}  // namespace eonsim

#endif  // EONSIM_TOPOLOGY_HPP
