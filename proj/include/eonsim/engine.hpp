#ifndef EONSIM_ENGINE_HPP
#define EONSIM_ENGINE_HPP

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "eonsim/rsa.hpp"
#include "eonsim/topology.hpp"
#include "eonsim/traffic.hpp"

namespace eonsim {

struct SimStats {
  std::string scenario;
  double load_erlang = 0.0;
  std::uint64_t seed = 0;
  std::int64_t requests_total = 0;
  std::int64_t requests_blocked = 0;
  double bandwidth_requested_ghz = 0.0;
  double bandwidth_blocked_ghz = 0.0;

  friend bool operator==(const SimStats&, const SimStats&) = default;
};

/// Request blocking probability; throws ConfigError when no requests were counted.
[[nodiscard]] double rbp(const SimStats& s);
/// Bandwidth blocking probability over requested bandwidth (guard slots excluded).
[[nodiscard]] double bbp(const SimStats& s);

struct RunOptions {
  // Link-length shortest paths, the same routes that the betweenness values are computed on.
  PathMetric metric = PathMetric::length;
  /// Arrivals simulated before counting starts; they still occupy spectrum.
  std::int64_t warmup = 0;
  /// Audit grids against the active table every K events (0 = never).
  std::int64_t audit_every = 0;
  /// Process the remaining departures after the last arrival.
  bool drain = false;
};

/// Final state of a run, exposed for invariant checks.
struct RunTrace {
  SimStats stats;
  std::size_t active_at_end = 0;
  bool grids_empty_at_end = false;
  std::int64_t audits = 0;
};

/// One SP-FF simulation of n_requests counted arrivals. Throws AllocationConflict
/// (or std::logic_error on a failed audit) if the spectrum bookkeeping breaks.
[[nodiscard]] SimStats run(const Topology& t, const TrafficScenario& s, std::int64_t n_requests, std::uint64_t seed,
                           const RunOptions& opts = {});
[[nodiscard]] RunTrace run_traced(const Topology& t, const TrafficScenario& s, std::int64_t n_requests,
                                  std::uint64_t seed, const RunOptions& opts = {});

/// Seed of sweep cell (load index, replication index). The scenario index is
/// deliberately absent: all scenarios at one cell see the same random stream.
[[nodiscard]] std::uint64_t cell_seed(std::uint64_t base_seed, std::size_t load_index, std::size_t replication);

struct SweepRow {
  std::size_t scenario_index = 0;
  std::size_t load_index = 0;
  std::size_t replication = 0;
  SimStats stats;
};

/// Mean over replications for one (scenario, load).
struct SweepCell {
  std::string scenario;
  double load_erlang = 0.0;
  double mean_rbp = 0.0;
  double mean_bbp = 0.0;
};

enum class Metric { rbp, bbp };

/// A metric as a function of load for one scenario.
struct Curve {
  std::string scenario;
  std::vector<double> loads;
  Eigen::VectorXd values;
};

struct SweepResult {
  std::vector<std::string> scenarios;
  std::vector<double> loads;
  std::size_t replications = 0;
  std::vector<SweepRow> rows;    // ordered by (scenario, load, replication)
  std::vector<SweepCell> cells;  // ordered by (scenario, load)

  [[nodiscard]] const SweepCell& cell(std::size_t scenario, std::size_t load) const;
  [[nodiscard]] Curve curve(std::size_t scenario, Metric m) const;
  /// Curve of a single replication (no averaging).
  [[nodiscard]] Curve replication_curve(std::size_t scenario, std::size_t replication, Metric m) const;
  [[nodiscard]] std::size_t scenario_index(const std::string& name) const;
};

struct SweepOptions {
  RunOptions run;
  unsigned threads = 0;  // 0 = hardware concurrency
};

[[nodiscard]] SweepResult sweep(const Topology& t, const std::vector<ScenarioSpec>& specs,
                                const std::vector<double>& loads, std::int64_t n_requests, std::size_t replications,
                                std::uint64_t base_seed, const SweepOptions& opts = {});

enum class DeltaMode {
  pointwise,      // mean over loads of (a - b) / b
  ratio_of_means  // (mean a - mean b) / mean b
};

struct RelativeDelta {
  double percent = 0.0;
  std::vector<double> excluded_loads;  // baseline was zero there
};

/// Average relative difference of `a` against `baseline`, in percent.
/// Throws ConfigError on mismatched load grids or when no usable point remains.
[[nodiscard]] RelativeDelta avg_relative_delta(const Curve& a, const Curve& baseline,
                                               DeltaMode mode = DeltaMode::pointwise);

}  // namespace eonsim

#endif  // EONSIM_ENGINE_HPP
