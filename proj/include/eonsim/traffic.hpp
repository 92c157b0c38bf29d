#ifndef EONSIM_TRAFFIC_HPP
#define EONSIM_TRAFFIC_HPP

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "eonsim/request.hpp"
#include "eonsim/topology.hpp"

namespace eonsim {

enum class ScenarioKind { uniform, dest_skew, rate_scaled, closed_region };

/// network: NL is the whole network's offered load, sum(lambda) = mu * NL.
/// per_node: NL is each node's average load, sum(lambda) = n * mu * NL.
enum class LoadBasis { network, per_node };

[[nodiscard]] std::string_view to_string(ScenarioKind k);
[[nodiscard]] ScenarioKind parse_scenario_kind(std::string_view s);
[[nodiscard]] std::string_view to_string(LoadBasis b);
[[nodiscard]] LoadBasis parse_load_basis(std::string_view s);

struct ScenarioSpec {
  std::string name = "SP-FF";
  ScenarioKind kind = ScenarioKind::uniform;
  std::vector<NodeId> hotspots;
  double p_hot = 0.2;
  double p_cold = 0.02;
  double alpha = 1.0;
  double load_erlang = 10.0;
  double mean_holding = 1.0;
  double bandwidth_min_ghz = 50.0;
  double bandwidth_max_ghz = 250.0;
  LoadBasis load_basis = LoadBasis::network;

  friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

/// Per-node arrival rates and per-source destination distributions.
struct TrafficScenario {
  std::string name;
  Eigen::VectorXd arrival_rate;  // lambda_i by node index
  Eigen::MatrixXd dest_dist;     // row = source, column = destination; rows sum to 1, zero diagonal
  std::vector<bool> is_hotspot;  // by node index
  double mean_holding = 1.0;
  double bandwidth_min_ghz = 50.0;
  double bandwidth_max_ghz = 250.0;

  [[nodiscard]] double total_rate() const { return arrival_rate.sum(); }
  [[nodiscard]] int node_count() const { return static_cast<int>(arrival_rate.size()); }
  /// Offered load in Erlang: sum(lambda) / mu.
  [[nodiscard]] double offered_load() const { return total_rate() * mean_holding; }
};

/// Throws ConfigError on an invalid spec.
[[nodiscard]] TrafficScenario build_scenario(const ScenarioSpec& spec, const Topology& t);

/// Probability that a request's destination is a hotspot, marginalized over sources.
[[nodiscard]] double hotspot_request_share(const TrafficScenario& s);

/// Portable random stream: std::mt19937_64 with hand-rolled variate
/// transforms, so the same seed yields the same draws on every standard library.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double exponential(double mean) { return -mean * std::log1p(-uniform()); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer; used to derive independent seeds.
[[nodiscard]] std::uint64_t mix_seed(std::uint64_t x);

/// Draws requests from a scenario. Each request consumes exactly five
/// uniforms in the order: inter-arrival, source, destination, bandwidth,
/// holding time. Streams of different scenarios therefore stay aligned.
class RequestSampler {
 public:
  explicit RequestSampler(const TrafficScenario& s);

  [[nodiscard]] ConnectionRequest sample(RandomStream& rng, SimTime now) const;
  [[nodiscard]] const TrafficScenario& scenario() const { return *scenario_; }

 private:
  const TrafficScenario* scenario_;
  std::vector<double> source_cdf_;
  std::vector<std::vector<double>> dest_cdf_;
};

/// Convenience wrapper building a sampler per call.
[[nodiscard]] ConnectionRequest sample_request(const TrafficScenario& s, RandomStream& rng, SimTime now);

}  // namespace eonsim

#endif  // EONSIM_TRAFFIC_HPP
