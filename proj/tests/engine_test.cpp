#include <doctest.h>

#include "eonsim/engine.hpp"

using namespace eonsim;

namespace {

Topology pair_topology(int slots) { return Topology(2, {{NodeId(1), NodeId(2)}}, slots); }

TrafficScenario narrow_band(const Topology& t, double lo, double hi, double load = 1.0) {
  ScenarioSpec spec;
  spec.bandwidth_min_ghz = lo;
  spec.bandwidth_max_ghz = hi;
  spec.load_erlang = load;
  return build_scenario(spec, t);
}

Curve curve(std::vector<double> v) {
  Curve c{"x", {}, Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()))};
  for (std::size_t i = 0; i < v.size(); ++i) c.loads.push_back(5.0 * static_cast<double>(i + 1));
  return c;
}

}  // namespace

TEST_CASE("guaranteed fit and guaranteed block") {
  const Topology fits = pair_topology(8);
  const SimStats ok = run(fits, narrow_band(fits, 50, 87.5), 1, 1);
  CHECK(ok.requests_total == 1);
  CHECK(rbp(ok) == 0.0);

  const Topology tight = pair_topology(4);
  const SimStats blocked = run(tight, narrow_band(tight, 50, 250), 500, 1);
  CHECK(rbp(blocked) == 1.0);
  CHECK(bbp(blocked) == 1.0);
}

TEST_CASE("vanishing load never blocks") {
  const Topology t = builtin_nsfnet();
  ScenarioSpec spec;
  spec.load_erlang = 0.01;
  const SimStats s = run(t, build_scenario(spec, t), 10'000, 3);
  CHECK(s.requests_total == 10'000);
  CHECK(s.requests_blocked == 0);
}

TEST_CASE("rbp and bbp") {
  SimStats s;
  s.requests_total = 100;
  s.requests_blocked = 10;
  s.bandwidth_requested_ghz = 1000;
  CHECK(rbp(s) == doctest::Approx(0.1));
  s.requests_blocked = 0;
  CHECK(rbp(s) == 0.0);
  CHECK(bbp(s) == 0.0);

  SimStats three;
  three.requests_total = 3;
  three.requests_blocked = 1;
  three.bandwidth_requested_ghz = 50 + 100 + 250;
  three.bandwidth_blocked_ghz = 250;
  CHECK(bbp(three) == doctest::Approx(0.625));

  CHECK_THROWS_AS((void)rbp(SimStats{}), ConfigError);
  CHECK_THROWS_AS((void)bbp(SimStats{}), ConfigError);
}

TEST_CASE("runs are deterministic in the seed") {
  const Topology t = builtin_nsfnet();
  ScenarioSpec spec;
  spec.load_erlang = 20;
  spec.load_basis = LoadBasis::per_node;
  const TrafficScenario s = build_scenario(spec, t);
  const SimStats a = run(t, s, 5000, 99);
  const SimStats b = run(t, s, 5000, 99);
  CHECK(a == b);
  CHECK(a.requests_blocked > 0);
  CHECK(!(run(t, s, 5000, 100) == a));
}

TEST_CASE("draining and auditing") {
  const Topology t = builtin_nsfnet().with_slots(40);
  ScenarioSpec spec;
  spec.load_erlang = 10;
  spec.load_basis = LoadBasis::per_node;
  const TrafficScenario s = build_scenario(spec, t);
  RunOptions opts;
  opts.audit_every = 1;
  opts.drain = true;
  opts.warmup = 200;
  const RunTrace tr = run_traced(t, s, 1000, 4, opts);
  CHECK(tr.audits > 1000);
  CHECK(tr.active_at_end == 0);
  CHECK(tr.grids_empty_at_end);
  CHECK(tr.stats.requests_total == 1000);
  CHECK(tr.stats.requests_blocked > 0);

  opts.drain = false;
  const RunTrace open = run_traced(t, s, 1000, 4, opts);
  CHECK(open.active_at_end > 0);
  CHECK(!open.grids_empty_at_end);
  CHECK(open.stats == tr.stats);
}

TEST_CASE("run rejects bad arguments") {
  const Topology t = builtin_nsfnet();
  const TrafficScenario s = build_scenario(ScenarioSpec{}, t);
  CHECK_THROWS_AS((void)run(t, s, 0, 1), ConfigError);
  RunOptions opts;
  opts.warmup = -1;
  CHECK_THROWS_AS((void)run(t, s, 10, 1, opts), ConfigError);
  CHECK_THROWS_AS((void)run(pair_topology(8), s, 10, 1), ConfigError);
}

TEST_CASE("sweep layout and aggregation") {
  const Topology t = builtin_nsfnet();
  ScenarioSpec a;
  a.load_basis = LoadBasis::per_node;
  ScenarioSpec b = a;
  b.name = "twin";
  const SweepResult r = sweep(t, {a, b}, {10, 20}, 2000, 3, 5);
  CHECK(r.rows.size() == 12);
  CHECK(r.cells.size() == 4);
  for (std::size_t k = 0; k < r.rows.size(); ++k) {
    CHECK(r.rows[k].scenario_index == k / 6);
    CHECK(r.rows[k].load_index == (k / 3) % 2);
    CHECK(r.rows[k].replication == k % 3);
    CHECK(r.rows[k].stats.load_erlang == r.loads[r.rows[k].load_index]);
  }
  // Identical specs sharing the seed schedule give identical aggregates.
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(r.cell(0, j).mean_rbp == r.cell(1, j).mean_rbp);
    CHECK(r.cell(0, j).mean_bbp == r.cell(1, j).mean_bbp);
  }
  CHECK(r.scenario_index("twin") == 1);
  CHECK_THROWS_AS((void)r.scenario_index("nope"), ConfigError);

  const Curve c = r.curve(0, Metric::rbp);
  const Eigen::VectorXd reps = (r.replication_curve(0, 0, Metric::rbp).values +
                                r.replication_curve(0, 1, Metric::rbp).values +
                                r.replication_curve(0, 2, Metric::rbp).values) / 3.0;
  CHECK(c.values.isApprox(reps));

  // Same seed, same cell: the rows are reproducible, independent of thread count.
  SweepOptions serial;
  serial.threads = 1;
  const SweepResult again = sweep(t, {a, b}, {10, 20}, 2000, 3, 5, serial);
  for (std::size_t k = 0; k < r.rows.size(); ++k) CHECK(again.rows[k].stats == r.rows[k].stats);
}

TEST_CASE("sweep preconditions") {
  const Topology t = builtin_nsfnet();
  CHECK_THROWS_AS((void)sweep(t, {}, {10}, 10, 1, 1), ConfigError);
  CHECK_THROWS_AS((void)sweep(t, {ScenarioSpec{}}, {}, 10, 1, 1), ConfigError);
  CHECK_THROWS_AS((void)sweep(t, {ScenarioSpec{}}, {10}, 10, 0, 1), ConfigError);
  CHECK_THROWS_AS((void)sweep(t, {ScenarioSpec{}}, {-1}, 10, 1, 1), ConfigError);
}

TEST_CASE("cell seeds") {
  CHECK(cell_seed(1, 0, 0) == cell_seed(1, 0, 0));
  CHECK(cell_seed(1, 0, 0) != cell_seed(1, 0, 1));
  CHECK(cell_seed(1, 0, 0) != cell_seed(1, 1, 0));
  CHECK(cell_seed(1, 1, 0) != cell_seed(1, 0, 1));
  CHECK(cell_seed(1, 0, 0) != cell_seed(2, 0, 0));
}

TEST_CASE("average relative delta") {
  const Curve b = curve({0.10, 0.20});
  CHECK(avg_relative_delta(b, b).percent == doctest::Approx(0.0));
  CHECK(avg_relative_delta(curve({0.15, 0.30}), b).percent == doctest::Approx(50.0));
  CHECK(avg_relative_delta(curve({0.12, 0.26}), b).percent == doctest::Approx(25.0));
  CHECK(avg_relative_delta(curve({0.12, 0.26}), b, DeltaMode::ratio_of_means).percent ==
        doctest::Approx(100.0 * (0.19 - 0.15) / 0.15));

  const RelativeDelta partial = avg_relative_delta(curve({0.05, 0.30}), curve({0.0, 0.20}));
  CHECK(partial.percent == doctest::Approx(50.0));
  CHECK(partial.excluded_loads == std::vector<double>{5.0});

  CHECK_THROWS_AS((void)avg_relative_delta(b, curve({0.0, 0.0})), ConfigError);
  CHECK_THROWS_AS((void)avg_relative_delta(b, curve({0.1, 0.2, 0.3})), ConfigError);
}
