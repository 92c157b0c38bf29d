#include "eonsim/rsa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

namespace eonsim {

PathMetric parse_path_metric(std::string_view s) {
  if (s == "hops") return PathMetric::hops;
  if (s == "length") return PathMetric::length;
  throw ConfigError("unknown path metric '" + std::string(s) + "' (expected hops|length)");
}

std::string_view to_string(PathMetric m) { return m == PathMetric::hops ? "hops" : "length"; }

Path ShortestPathTree::path_to(NodeId d) const {
  Path p;
  if (d.index() >= distance.size() || std::isinf(distance[d.index()])) {
    throw RoutingError("node " + std::to_string(d.value) + " unreachable from " + std::to_string(source.value));
  }
  for (NodeId n = d; n != source; n = predecessor[n.index()]) {
    p.nodes.push_back(n);
    p.fibers.push_back(via_fiber[n.index()]);
  }
  p.nodes.push_back(source);
  std::reverse(p.nodes.begin(), p.nodes.end());
  std::reverse(p.fibers.begin(), p.fibers.end());
  return p;
}

ShortestPathTree shortest_path_tree(const Topology& t, NodeId source, PathMetric metric) {
  if (!t.contains(source)) throw RoutingError("source " + std::to_string(source.value) + " not in topology");
  const auto n = static_cast<std::size_t>(t.node_count());
  ShortestPathTree tree{source, std::vector<double>(n, std::numeric_limits<double>::infinity()),
                        std::vector<NodeId>(n, NodeId{}), std::vector<FiberId>(n, 0)};
  std::vector<bool> settled(n, false);

  using Entry = std::pair<double, int>;  // (distance, node id): settle order
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  tree.distance[source.index()] = 0.0;
  heap.emplace(0.0, source.value);
  while (!heap.empty()) {
    const auto [d, id] = heap.top();
    heap.pop();
    const NodeId u(id);
    if (settled[u.index()] || d > tree.distance[u.index()]) continue;
    settled[u.index()] = true;
    for (const Neighbor& nb : t.neighbors(u)) {
      const double w = metric == PathMetric::hops ? 1.0 : nb.length_km;
      const double cand = d + w;
      auto& best = tree.distance[nb.node.index()];
      if (!settled[nb.node.index()] && cand < best) {
        best = cand;
        tree.predecessor[nb.node.index()] = u;
        tree.via_fiber[nb.node.index()] = nb.fiber;
        heap.emplace(cand, nb.node.value);
      }
    }
  }
  return tree;
}

Path shortest_path(const Topology& t, NodeId s, NodeId d, PathMetric metric) {
  if (s == d) throw RoutingError("source and destination are both node " + std::to_string(s.value));
  if (!t.contains(d)) throw RoutingError("destination " + std::to_string(d.value) + " not in topology");
  return shortest_path_tree(t, s, metric).path_to(d);
}

RouteTable::RouteTable(const Topology& t, PathMetric metric) : n_(t.node_count()) {
  routes_.resize(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_));
  for (int s = 1; s <= n_; ++s) {
    const ShortestPathTree tree = shortest_path_tree(t, NodeId(s), metric);
    for (int d = 1; d <= n_; ++d) {
      if (d != s) routes_[static_cast<std::size_t>((s - 1) * n_ + (d - 1))] = tree.path_to(NodeId(d));
    }
  }
}

const Path& RouteTable::route(NodeId s, NodeId d) const {
  if (s == d || s.value < 1 || s.value > n_ || d.value < 1 || d.value > n_) {
    throw RoutingError("no route " + std::to_string(s.value) + " -> " + std::to_string(d.value));
  }
  return routes_[s.index() * static_cast<std::size_t>(n_) + d.index()];
}

int slots_required(double bandwidth_ghz, double slot_width_ghz) {
  if (!(bandwidth_ghz > 0.0) || !(slot_width_ghz > 0.0)) {
    throw ConfigError("slots_required needs positive bandwidth and slot width");
  }
  // Shave a relative 1e-12 so quotients that are integral up to rounding (e.g. 0.3 / 0.1) are not bumped.
  const double q = bandwidth_ghz / slot_width_ghz;
  return static_cast<int>(std::ceil(q * (1.0 - 1e-12)));
}

NetworkState::NetworkState(const Topology& t) : topology_(&t), grids_(t.make_grids()) {}

std::optional<int> NetworkState::first_fit(const Path& path, int total_slots) const {
  std::vector<const SpectrumGrid*> along;
  along.reserve(path.fibers.size());
  for (FiberId f : path.fibers) along.push_back(&grids_.at(f));
  return eonsim::first_fit(along, total_slots);
}

const ActiveConnection& NetworkState::allocate(const ConnectionRequest& request, const Path& path, SlotBlock block) {
  if (block.data_slots < 1 || block.guard_slots < 0) throw AllocationConflict("malformed slot block");
  for (FiberId f : path.fibers) {
    if (!grids_.at(f).is_free(block.start, block.total())) {
      throw AllocationConflict("block [" + std::to_string(block.start) + ", " +
                               std::to_string(block.start + block.total()) + ") busy on fiber " +
                               std::to_string(f));
    }
  }
  for (FiberId f : path.fibers) grids_[f].occupy(block.start, block.total());
  const ConnectionId id = next_id_++;
  auto [it, _] = active_.emplace(
      id, ActiveConnection{id, request, path, block, request.arrival_time + request.holding_time});
  return it->second;
}

void NetworkState::release(ConnectionId id) {
  const auto it = active_.find(id);
  if (it == active_.end()) throw UnknownConnection("connection " + std::to_string(id) + " is not active");
  const ActiveConnection& c = it->second;
  for (FiberId f : c.path.fibers) grids_[f].release(c.block.start, c.block.total());
  active_.erase(it);
}

std::string NetworkState::audit() const {
  std::vector<SpectrumGrid> expected = topology_->make_grids();
  for (const auto& [id, c] : active_) {
    for (FiberId f : c.path.fibers) {
      try {
        expected.at(f).occupy(c.block.start, c.block.total());
      } catch (const AllocationConflict&) {
        return "connection " + std::to_string(id) + " overlaps another block on fiber " + std::to_string(f);
      }
    }
  }
  for (std::size_t f = 0; f < grids_.size(); ++f) {
    if (!(expected[f] == grids_[f])) return "fiber " + std::to_string(f) + " occupancy differs from active set";
  }
  return {};
}

}  // namespace eonsim
