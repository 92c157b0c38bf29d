#ifndef EONSIM_CENTRALITY_HPP
#define EONSIM_CENTRALITY_HPP

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <string_view>
#include <vector>

#include "eonsim/rsa.hpp"
#include "eonsim/topology.hpp"

namespace eonsim {

enum class CentralityKind { degree, betweenness };
enum class RankOrder { lowest, highest };

/// How sigma_st(i) / sigma_st is counted.
///   routed:        each ordered pair contributes the one path the router picks
///                  (ShortestPathTree), pairs averaged over both directions.
///   all_shortest:  every shortest path counts equally (classic Brandes).
enum class PathCounting { routed, all_shortest };

[[nodiscard]] std::string_view to_string(RankOrder o);
[[nodiscard]] RankOrder parse_rank_order(std::string_view s);

struct CentralityVector {
  CentralityKind kind = CentralityKind::degree;
  Eigen::VectorXd values;  // by node index

  [[nodiscard]] double operator[](NodeId n) const { return values(static_cast<Eigen::Index>(n.index())); }
  [[nodiscard]] int size() const { return static_cast<int>(values.size()); }
};

struct BetweennessOptions {
  PathMetric metric = PathMetric::length;
  PathCounting counting = PathCounting::routed;
};

[[nodiscard]] CentralityVector degree_centrality(const Topology& t);

/// Raw transit betweenness sum_{s<t, s!=i!=t} sigma_st(i) / sigma_st over all
/// shortest paths, by Brandes dependency accumulation. Scalar only needs field
/// arithmetic and construction from int, so exact rationals work.
template <typename Scalar>
[[nodiscard]] Eigen::Matrix<Scalar, Eigen::Dynamic, 1> all_paths_betweenness(const Topology& t, PathMetric metric);

/// Raw transit betweenness where each ordered pair contributes its routed path, halved.
[[nodiscard]] Eigen::VectorXd routed_betweenness(const Topology& t, PathMetric metric);

/// Divisor C(n, 2) of the endpoint-inclusive normalization.
[[nodiscard]] double betweenness_normalizer(int node_count);

/// Normalized betweenness: (raw + (n - 1)) / C(n, 2).
///
/// Each node is credited for the n-1 pairs it terminates plus its transit
/// share, so values lie in (0, 1]. This is the convention that reproduces the
/// published NSFNET table: fitting value = (raw + c) / K over the 14 entries
/// only admits c = 13 = n - 1 and K ~ 91 = C(14, 2).
[[nodiscard]] CentralityVector betweenness_centrality(const Topology& t, const BetweennessOptions& opts = {});

/// k node ids ordered by value; ties broken by ascending node id. Throws ConfigError for k out of range.
[[nodiscard]] std::vector<NodeId> rank_nodes(const CentralityVector& c, int k, RankOrder order);

// ---------------------------------------------------------------------------

namespace detail {
inline bool same_distance(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }
}  // namespace detail

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> all_paths_betweenness(const Topology& t, PathMetric metric) {
  const auto n = static_cast<std::size_t>(t.node_count());
  std::vector<Scalar> raw(n, Scalar(0));
  const double inf = std::numeric_limits<double>::infinity();

  for (std::size_t s = 0; s < n; ++s) {
    std::vector<double> dist(n, inf);
    std::vector<Scalar> sigma(n, Scalar(0));
    std::vector<std::vector<std::size_t>> preds(n);
    std::vector<std::size_t> order;  // nondecreasing distance
    std::vector<bool> done(n, false);

    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    dist[s] = 0.0;
    sigma[s] = Scalar(1);
    heap.emplace(0.0, s);
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (done[u] || d > dist[u]) continue;
      done[u] = true;
      order.push_back(u);
      for (const Neighbor& nb : t.neighbors(NodeId::from_index(u))) {
        const std::size_t v = nb.node.index();
        const double cand = d + (metric == PathMetric::hops ? 1.0 : nb.length_km);
        if (done[v]) continue;
        if (detail::same_distance(cand, dist[v])) {
          sigma[v] = sigma[v] + sigma[u];
          preds[v].push_back(u);
        } else if (cand < dist[v]) {
          dist[v] = cand;
          sigma[v] = sigma[u];
          preds[v].assign(1, u);
          heap.emplace(cand, v);
        }
      }
    }

    std::vector<Scalar> delta(n, Scalar(0));
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const std::size_t w = *it;
      for (std::size_t v : preds[w]) delta[v] = delta[v] + sigma[v] / sigma[w] * (Scalar(1) + delta[w]);
      if (w != s) raw[w] = raw[w] + delta[w];
    }
  }

  // Every unordered pair was visited from both endpoints.
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) out(static_cast<Eigen::Index>(i)) = raw[i] / Scalar(2);
  return out;
}

}  // namespace eonsim

#endif  // EONSIM_CENTRALITY_HPP
