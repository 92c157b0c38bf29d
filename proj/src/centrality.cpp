#include "eonsim/centrality.hpp"

#include <numeric>
#include <string>

namespace eonsim {

std::string_view to_string(RankOrder o) { return o == RankOrder::lowest ? "lowest" : "highest"; }

RankOrder parse_rank_order(std::string_view s) {
  if (s == "lowest") return RankOrder::lowest;
  if (s == "highest") return RankOrder::highest;
  throw ConfigError("unknown rank order '" + std::string(s) + "' (expected lowest|highest)");
}

CentralityVector degree_centrality(const Topology& t) {
  CentralityVector c{CentralityKind::degree, Eigen::VectorXd::Zero(t.node_count())};
  for (const Link& l : t.links()) {
    c.values(static_cast<Eigen::Index>(l.a.index())) += 1.0;
    c.values(static_cast<Eigen::Index>(l.b.index())) += 1.0;
  }
  return c;
}

Eigen::VectorXd routed_betweenness(const Topology& t, PathMetric metric) {
  Eigen::VectorXd raw = Eigen::VectorXd::Zero(t.node_count());
  for (int s = 1; s <= t.node_count(); ++s) {
    const ShortestPathTree tree = shortest_path_tree(t, NodeId(s), metric);
    for (int d = 1; d <= t.node_count(); ++d) {
      if (d == s) continue;
      const Path p = tree.path_to(NodeId(d));
      for (std::size_t k = 1; k + 1 < p.nodes.size(); ++k) raw(static_cast<Eigen::Index>(p.nodes[k].index())) += 0.5;
    }
  }
  return raw;
}

double betweenness_normalizer(int node_count) {
  return 0.5 * static_cast<double>(node_count) * static_cast<double>(node_count - 1);
}

CentralityVector betweenness_centrality(const Topology& t, const BetweennessOptions& opts) {
  const Eigen::VectorXd raw = opts.counting == PathCounting::routed ? routed_betweenness(t, opts.metric)
                                                                    : all_paths_betweenness<double>(t, opts.metric);
  const int n = t.node_count();
  return {CentralityKind::betweenness,
          (raw.array() + static_cast<double>(n - 1)) / betweenness_normalizer(n)};
}

std::vector<NodeId> rank_nodes(const CentralityVector& c, int k, RankOrder order) {
  if (k < 1 || k > c.size()) {
    throw ConfigError("rank_nodes: k=" + std::to_string(k) + " outside 1.." + std::to_string(c.size()));
  }
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(c.size()));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
    return order == RankOrder::lowest ? c.values(a) < c.values(b) : c.values(a) > c.values(b);
  });
  std::vector<NodeId> out;
  for (int i = 0; i < k; ++i) out.push_back(NodeId::from_index(static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])));
  return out;
}

}  // namespace eonsim
