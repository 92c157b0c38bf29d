#include "eonsim/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace eonsim {

std::string_view to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::uniform: return "uniform";
    case ScenarioKind::dest_skew: return "dest_skew";
    case ScenarioKind::rate_scaled: return "rate_scaled";
    case ScenarioKind::closed_region: return "closed_region";
  }
  return "?";
}

ScenarioKind parse_scenario_kind(std::string_view s) {
  if (s == "uniform") return ScenarioKind::uniform;
  if (s == "dest_skew") return ScenarioKind::dest_skew;
  if (s == "rate_scaled") return ScenarioKind::rate_scaled;
  if (s == "closed_region") return ScenarioKind::closed_region;
  throw ConfigError("unknown scenario kind '" + std::string(s) + "'");
}

std::string_view to_string(LoadBasis b) { return b == LoadBasis::network ? "network" : "per_node"; }

LoadBasis parse_load_basis(std::string_view s) {
  if (s == "network") return LoadBasis::network;
  if (s == "per_node") return LoadBasis::per_node;
  throw ConfigError("unknown load basis '" + std::string(s) + "' (expected network|per_node)");
}

namespace {

void validate(const ScenarioSpec& spec, const Topology& t) {
  auto fail = [&](const std::string& what) { throw ConfigError("scenario '" + spec.name + "': " + what); };
  if (!(spec.load_erlang > 0.0) || !std::isfinite(spec.load_erlang)) fail("load must be positive");
  if (!(spec.mean_holding > 0.0)) fail("mean_holding must be positive");
  if (!(spec.bandwidth_min_ghz > 0.0) || spec.bandwidth_max_ghz < spec.bandwidth_min_ghz) {
    fail("bandwidth range must satisfy 0 < min <= max");
  }
  std::set<NodeId> unique;
  for (NodeId h : spec.hotspots) {
    if (!t.contains(h)) fail("hotspot " + std::to_string(h.value) + " not in topology");
    if (!unique.insert(h).second) fail("hotspot " + std::to_string(h.value) + " listed twice");
  }
  if (spec.kind == ScenarioKind::uniform) return;
  if (spec.hotspots.empty()) fail("non-uniform scenario needs hotspots");
  if (spec.kind == ScenarioKind::dest_skew || spec.kind == ScenarioKind::closed_region) {
    if (!(spec.p_cold > 0.0) || !(spec.p_hot > spec.p_cold)) fail("need p_hot > p_cold > 0");
  }
  if (spec.kind == ScenarioKind::rate_scaled || spec.kind == ScenarioKind::closed_region) {
    if (!(spec.alpha >= 1.0)) fail("alpha must be >= 1");
  }
}

// Row of destination probabilities for `source`: base weights with the source dropped, renormalized.
Eigen::RowVectorXd weighted_row(const Eigen::RowVectorXd& weights, Eigen::Index source) {
  Eigen::RowVectorXd row = weights;
  row(source) = 0.0;
  return row / row.sum();
}

}  // namespace

TrafficScenario build_scenario(const ScenarioSpec& spec, const Topology& t) {
  validate(spec, t);
  const Eigen::Index n = t.node_count();
  const double mu = 1.0 / spec.mean_holding;
  const double total = mu * spec.load_erlang * (spec.load_basis == LoadBasis::per_node ? static_cast<double>(n) : 1.0);

  TrafficScenario s;
  s.name = spec.name;
  s.mean_holding = spec.mean_holding;
  s.bandwidth_min_ghz = spec.bandwidth_min_ghz;
  s.bandwidth_max_ghz = spec.bandwidth_max_ghz;
  s.is_hotspot.assign(static_cast<std::size_t>(n), false);
  for (NodeId h : spec.hotspots) s.is_hotspot[h.index()] = true;
  const auto n_hot = static_cast<double>(spec.hotspots.size());
  const double n_cold = static_cast<double>(n) - n_hot;

  // Arrival rates.
  if (spec.kind == ScenarioKind::rate_scaled || spec.kind == ScenarioKind::closed_region) {
    const double cold = total / (n_cold + spec.alpha * n_hot);
    s.arrival_rate = Eigen::VectorXd::Constant(n, cold);
    for (NodeId h : spec.hotspots) s.arrival_rate(static_cast<Eigen::Index>(h.index())) = spec.alpha * cold;
  } else {
    s.arrival_rate = Eigen::VectorXd::Constant(n, total / static_cast<double>(n));
  }
  if (std::abs(s.arrival_rate.sum() - total) > 1e-9 * total) {
    throw std::logic_error("load conservation violated for scenario '" + spec.name + "'");
  }

  // Destination rows.
  Eigen::RowVectorXd skew(n);
  for (Eigen::Index j = 0; j < n; ++j) skew(j) = s.is_hotspot[static_cast<std::size_t>(j)] ? spec.p_hot : spec.p_cold;
  const Eigen::RowVectorXd flat = Eigen::RowVectorXd::Ones(n);

  s.dest_dist.resize(n, n);
  for (Eigen::Index src = 0; src < n; ++src) {
    bool skewed = spec.kind == ScenarioKind::dest_skew ||
                  (spec.kind == ScenarioKind::closed_region && s.is_hotspot[static_cast<std::size_t>(src)]);
    s.dest_dist.row(src) = weighted_row(skewed ? skew : flat, src);
  }
  return s;
}

double hotspot_request_share(const TrafficScenario& s) {
  Eigen::VectorXd hot(s.node_count());
  for (Eigen::Index j = 0; j < hot.size(); ++j) hot(j) = s.is_hotspot[static_cast<std::size_t>(j)] ? 1.0 : 0.0;
  // P(dest hot) = sum_s P(source s) * sum_{j hot} dest_dist(s, j)
  return (s.arrival_rate.transpose() * s.dest_dist * hot)(0) / s.total_rate();
}

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

namespace {

std::vector<double> cdf(const auto& weights) {
  std::vector<double> c(static_cast<std::size_t>(weights.size()));
  double acc = 0.0;
  for (Eigen::Index i = 0; i < weights.size(); ++i) c[static_cast<std::size_t>(i)] = acc += weights(i);
  return c;
}

// Index of the first cumulative entry exceeding u * total, skipping zero-mass entries.
std::size_t pick(const std::vector<double>& c, double u) {
  const double x = u * c.back();
  auto it = std::upper_bound(c.begin(), c.end(), x);
  if (it == c.end()) it = std::lower_bound(c.begin(), c.end(), c.back());  // u * total rounded up to total
  return static_cast<std::size_t>(it - c.begin());
}

}  // namespace

RequestSampler::RequestSampler(const TrafficScenario& s) : scenario_(&s), source_cdf_(cdf(s.arrival_rate)) {
  for (Eigen::Index r = 0; r < s.dest_dist.rows(); ++r) dest_cdf_.push_back(cdf(s.dest_dist.row(r)));
}

ConnectionRequest RequestSampler::sample(RandomStream& rng, SimTime now) const {
  const TrafficScenario& s = *scenario_;
  ConnectionRequest r;
  r.arrival_time = now + rng.exponential(1.0 / s.total_rate());
  const std::size_t src = pick(source_cdf_, rng.uniform());
  // Zero-probability entries are flat cdf steps, so the source itself is never picked.
  const std::size_t dst = pick(dest_cdf_[src], rng.uniform());
  r.source = NodeId::from_index(src);
  r.destination = NodeId::from_index(dst);
  r.bandwidth_ghz = rng.uniform(s.bandwidth_min_ghz, s.bandwidth_max_ghz);
  r.holding_time = rng.exponential(s.mean_holding);
  return r;
}

ConnectionRequest sample_request(const TrafficScenario& s, RandomStream& rng, SimTime now) {
  return RequestSampler(s).sample(rng, now);
}

}  // namespace eonsim
