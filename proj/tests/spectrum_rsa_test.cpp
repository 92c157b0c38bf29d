#include <doctest.h>

#include <algorithm>
#include <random>

#include "eonsim/rsa.hpp"
#include "oracles.hpp"

using namespace eonsim;

namespace {

Topology square() {
  return Topology(4, {{NodeId(1), NodeId(2)}, {NodeId(2), NodeId(3)}, {NodeId(3), NodeId(4)}, {NodeId(4), NodeId(1)}});
}

std::optional<int> fit(const std::vector<SpectrumGrid>& grids, int len) {
  std::vector<const SpectrumGrid*> ptrs;
  for (const auto& g : grids) ptrs.push_back(&g);
  return first_fit(ptrs, len);
}

void check_path_shape(const Topology& t, const Path& p, NodeId s, NodeId d) {
  REQUIRE(p.nodes.size() == p.fibers.size() + 1);
  CHECK(p.nodes.front() == s);
  CHECK(p.nodes.back() == d);
  std::set<NodeId> seen(p.nodes.begin(), p.nodes.end());
  CHECK(seen.size() == p.nodes.size());
  for (std::size_t i = 0; i < p.fibers.size(); ++i) {
    CHECK(t.fiber(p.fibers[i]).from == p.nodes[i]);
    CHECK(t.fiber(p.fibers[i]).to == p.nodes[i + 1]);
  }
}

}  // namespace

TEST_CASE("spectrum grid occupy and release") {
  SpectrumGrid g(100);
  CHECK(g.empty());
  g.occupy(60, 10);  // crosses a word boundary
  CHECK(g.occupied_count() == 10);
  CHECK(g.occupied(63));
  CHECK(g.occupied(64));
  CHECK(!g.occupied(70));
  CHECK(!g.is_free(69, 2));
  CHECK(g.is_free(70, 30));
  CHECK(!g.is_free(90, 11));
  CHECK_THROWS_AS(g.occupy(65, 1), AllocationConflict);
  CHECK_THROWS_AS(g.release(0, 1), AllocationConflict);
  g.release(60, 10);
  CHECK(g == SpectrumGrid(100));
}

TEST_CASE("slots_required") {
  CHECK(slots_required(50, 12.5) == 4);
  CHECK(slots_required(250, 12.5) == 20);
  CHECK(slots_required(51, 12.5) == 5);
  CHECK(slots_required(87.5, 12.5) == 7);
  CHECK(slots_required(0.3, 0.1) == 3);
  CHECK_THROWS_AS((void)slots_required(0, 12.5), ConfigError);
  CHECK_THROWS_AS((void)slots_required(50, 0), ConfigError);
}

TEST_CASE("first_fit examples") {
  std::vector<SpectrumGrid> grids(3);
  CHECK(fit(grids, 5) == 0);

  std::vector<SpectrumGrid> one(1);
  one[0].occupy(0, 4);
  CHECK(fit(one, 5) == 4);

  std::vector<SpectrumGrid> two(2);
  two[0].occupy(0, 10);
  two[1].occupy(12, 9);
  const auto expected = oracle::exhaustive_first_fit(two, 3);
  CHECK(expected == 21);
  CHECK(fit(two, 3) == expected);

  std::vector<SpectrumGrid> full(1, SpectrumGrid(8));
  full[0].occupy(0, 8);
  CHECK(!fit(full, 1));
  CHECK(!fit(std::vector<SpectrumGrid>(1, SpectrumGrid(8)), 9));
}

TEST_CASE("first_fit agrees with the exhaustive scan") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const int k = std::uniform_int_distribution<int>(1, 200)(rng);
    const int hops = std::uniform_int_distribution<int>(1, 4)(rng);
    const double density = std::uniform_real_distribution<double>(0.0, 0.6)(rng);
    std::vector<SpectrumGrid> grids(static_cast<std::size_t>(hops), SpectrumGrid(k));
    for (auto& g : grids) {
      for (int i = 0; i < k; ++i) {
        if (std::bernoulli_distribution(density)(rng)) g.occupy(i, 1);
      }
    }
    const int len = std::uniform_int_distribution<int>(1, std::min(k, 24))(rng);
    REQUIRE(fit(grids, len) == oracle::exhaustive_first_fit(grids, len));
  }
}

TEST_CASE("shortest_path small graphs") {
  const Topology tri(3, {{NodeId(1), NodeId(2)}, {NodeId(2), NodeId(3)}, {NodeId(1), NodeId(3)}});
  CHECK(shortest_path(tri, NodeId(1), NodeId(2)).nodes == std::vector<NodeId>{NodeId(1), NodeId(2)});

  const Path p = shortest_path(square(), NodeId(1), NodeId(3));
  CHECK(p.nodes == std::vector<NodeId>{NodeId(1), NodeId(2), NodeId(3)});
  check_path_shape(square(), p, NodeId(1), NodeId(3));

  CHECK_THROWS_AS((void)shortest_path(tri, NodeId(2), NodeId(2)), RoutingError);
  CHECK_THROWS_AS((void)shortest_path(tri, NodeId(1), NodeId(4)), RoutingError);
}

TEST_CASE("shortest_path matches BFS and Floyd-Warshall on NSFNET") {
  const Topology t = builtin_nsfnet();
  const auto lengths = oracle::all_pairs(t, PathMetric::length);
  for (int s = 1; s <= 14; ++s) {
    const auto hops = oracle::bfs_hops(t, NodeId(s));
    for (int d = 1; d <= 14; ++d) {
      if (s == d) continue;
      const Path ph = shortest_path(t, NodeId(s), NodeId(d), PathMetric::hops);
      check_path_shape(t, ph, NodeId(s), NodeId(d));
      CHECK(static_cast<int>(ph.hops()) == hops[static_cast<std::size_t>(d - 1)]);
      CHECK(ph.hops() == shortest_path(t, NodeId(d), NodeId(s), PathMetric::hops).hops());

      const Path pl = shortest_path(t, NodeId(s), NodeId(d), PathMetric::length);
      check_path_shape(t, pl, NodeId(s), NodeId(d));
      double km = 0;
      for (FiberId f : pl.fibers) km += t.links()[t.fiber(f).link].length_km;
      CHECK(km == doctest::Approx(lengths[static_cast<std::size_t>(s - 1)][static_cast<std::size_t>(d - 1)]));
    }
  }
}

TEST_CASE("route table agrees with single queries and is deterministic") {
  const Topology t = builtin_nsfnet();
  const RouteTable a(t, PathMetric::hops);
  const RouteTable b(t, PathMetric::hops);
  for (int s = 1; s <= 14; ++s) {
    for (int d = 1; d <= 14; ++d) {
      if (s == d) continue;
      CHECK(a.route(NodeId(s), NodeId(d)).nodes == shortest_path(t, NodeId(s), NodeId(d), PathMetric::hops).nodes);
      CHECK(a.route(NodeId(s), NodeId(d)).fibers == b.route(NodeId(s), NodeId(d)).fibers);
    }
  }
  CHECK_THROWS_AS((void)a.route(NodeId(3), NodeId(3)), RoutingError);
}

TEST_CASE("allocate and release") {
  const Topology t = builtin_nsfnet();
  NetworkState st(t);
  const ConnectionRequest req{NodeId(1), NodeId(5), 100.0, 0.0, 1.0};
  const Path p = shortest_path(t, NodeId(1), NodeId(5));
  const SlotBlock block{0, 8, kGuardSlots};
  REQUIRE(st.first_fit(p, block.total()) == 0);
  const ConnectionId id = st.allocate(req, p, block).id;
  for (FiberId f = 0; f < t.fibers().size(); ++f) {
    const bool on_path = std::find(p.fibers.begin(), p.fibers.end(), f) != p.fibers.end();
    CHECK(st.grid(f).occupied_count() == (on_path ? 9 : 0));
  }
  CHECK(st.active().at(id).departs_at == 1.0);
  CHECK_THROWS_AS((void)st.allocate(req, p, block), AllocationConflict);
  CHECK(st.audit().empty());

  // A fiber-disjoint connection is unaffected.
  const Path q = shortest_path(t, NodeId(12), NodeId(13));
  const ConnectionId id2 = st.allocate(req, q, block).id;
  CHECK(st.active().at(id2).block.start == 0);

  st.release(id);
  st.release(id2);
  CHECK_THROWS_AS(st.release(id), UnknownConnection);
  for (const auto& g : st.grids()) CHECK(g.empty());
}

TEST_CASE("1000-op trace matches a replay from the surviving set") {
  const Topology t = builtin_nsfnet().with_slots(64);
  const RouteTable routes(t, PathMetric::hops);
  NetworkState st(t);
  std::mt19937_64 rng(5);
  std::vector<ConnectionId> live;
  for (int op = 0; op < 1000; ++op) {
    if (!live.empty() && std::bernoulli_distribution(0.45)(rng)) {
      const auto k = std::uniform_int_distribution<std::size_t>(0, live.size() - 1)(rng);
      st.release(live[k]);
      live.erase(live.begin() + static_cast<std::ptrdiff_t>(k));
      continue;
    }
    const int s = std::uniform_int_distribution<int>(1, 14)(rng);
    int d = std::uniform_int_distribution<int>(1, 13)(rng);
    if (d >= s) ++d;
    const Path& p = routes.route(NodeId(s), NodeId(d));
    const int data = std::uniform_int_distribution<int>(1, 6)(rng);
    if (const auto start = st.first_fit(p, data + kGuardSlots)) {
      live.push_back(st.allocate({NodeId(s), NodeId(d), 12.5 * data, 0, 1}, p, {*start, data, kGuardSlots}).id);
    }
  }
  std::vector<SpectrumGrid> replay = t.make_grids();
  for (ConnectionId id : live) {
    const ActiveConnection& c = st.active().at(id);
    for (FiberId f : c.path.fibers) replay[f].occupy(c.block.start, c.block.total());
  }
  CHECK(replay == st.grids());
  CHECK(st.audit().empty());
}
