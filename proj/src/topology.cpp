#include "eonsim/topology.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <utility>

namespace eonsim {

namespace {

void validate_links(int node_count, std::vector<Link>& links) {
  if (node_count < 2) throw ValidationError("topology needs at least 2 nodes");
  std::set<std::pair<int, int>> seen;
  for (Link& l : links) {
    if (l.a.value < 1 || l.a.value > node_count || l.b.value < 1 || l.b.value > node_count) {
      throw ValidationError("link " + std::to_string(l.a.value) + "-" + std::to_string(l.b.value) +
                            ": node index out of range 1.." + std::to_string(node_count));
    }
    if (l.a == l.b) throw ValidationError("self-loop at node " + std::to_string(l.a.value));
    if (!(l.length_km > 0.0)) {
      throw ValidationError("link " + std::to_string(l.a.value) + "-" + std::to_string(l.b.value) +
                            ": length must be positive");
    }
    if (l.b < l.a) std::swap(l.a, l.b);
    if (!seen.emplace(l.a.value, l.b.value).second) {
      throw ValidationError("duplicate link " + std::to_string(l.a.value) + "-" + std::to_string(l.b.value));
    }
  }
}

}  // namespace

Topology::Topology(int node_count, std::vector<Link> links, int slot_count, double slot_width_ghz)
    : node_count_(node_count), links_(std::move(links)), slot_count_(slot_count), slot_width_ghz_(slot_width_ghz) {
  if (slot_count <= 0) throw ValidationError("slot count must be positive");
  if (!(slot_width_ghz > 0.0)) throw ValidationError("slot width must be positive");
  validate_links(node_count_, links_);

  adjacency_.resize(static_cast<std::size_t>(node_count_));
  fibers_.reserve(2 * links_.size());
  for (std::size_t k = 0; k < links_.size(); ++k) {
    const Link& l = links_[k];
    fibers_.push_back({l.a, l.b, k});
    fibers_.push_back({l.b, l.a, k});
    adjacency_[l.a.index()].push_back({l.b, 2 * k, l.length_km});
    adjacency_[l.b.index()].push_back({l.a, 2 * k + 1, l.length_km});
  }
  for (auto& row : adjacency_) {
    std::sort(row.begin(), row.end(), [](const Neighbor& x, const Neighbor& y) { return x.node < y.node; });
  }

  // Connectivity via BFS from node 1.
  std::vector<bool> seen(adjacency_.size(), false);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop();
    for (const Neighbor& nb : adjacency_[u]) {
      if (!seen[nb.node.index()]) {
        seen[nb.node.index()] = true;
        ++reached;
        frontier.push(nb.node.index());
      }
    }
  }
  if (reached != adjacency_.size()) throw ValidationError("topology is not connected");
}

bool Topology::adjacent(NodeId a, NodeId b) const {
  if (!contains(a) || !contains(b)) return false;
  const auto& row = adjacency_[a.index()];
  return std::any_of(row.begin(), row.end(), [&](const Neighbor& nb) { return nb.node == b; });
}

FiberId Topology::fiber_between(NodeId a, NodeId b) const {
  if (contains(a) && contains(b)) {
    for (const Neighbor& nb : adjacency_[a.index()]) {
      if (nb.node == b) return nb.fiber;
    }
  }
  throw NotAdjacentError("nodes " + std::to_string(a.value) + " and " + std::to_string(b.value) +
                         " are not adjacent");
}

std::vector<SpectrumGrid> Topology::make_grids() const {
  return std::vector<SpectrumGrid>(fibers_.size(), SpectrumGrid(slot_count_, slot_width_ghz_));
}

Topology Topology::with_slots(int slot_count) const {
  return Topology(node_count_, links_, slot_count, slot_width_ghz_);
}

Topology builtin_nsfnet() {
  // Lengths in km.
  static const int kLinks[][3] = {
      {1, 2, 1100},  {1, 3, 1600},  {1, 8, 2800},  {2, 3, 600},  {2, 4, 1000},  {3, 6, 2000},  {4, 5, 600},
      {4, 11, 2400}, {5, 6, 1100},  {5, 7, 800},   {6, 10, 1200}, {6, 13, 2000}, {7, 8, 700},   {8, 9, 700},
      {9, 10, 900},  {9, 12, 500},  {9, 14, 500},  {11, 12, 800}, {11, 14, 800}, {12, 13, 300}, {13, 14, 300},
  };
  std::vector<Link> links;
  for (const auto& l : kLinks) links.push_back({NodeId(l[0]), NodeId(l[1]), static_cast<double>(l[2])});
  return Topology(14, std::move(links));
}

Topology topology_by_name(const std::string& name_or_path) {
  if (name_or_path == "nsfnet") return builtin_nsfnet();
  return load_topology(name_or_path);
}

Topology parse_topology(std::istream& in) {
  std::optional<int> nodes;
  int slots = kDefaultSlotCount;
  std::vector<Link> links;
  std::string raw;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    throw ParseError("line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream line(raw);
    std::string keyword;
    if (!(line >> keyword)) continue;
    if (keyword == "nodes") {
      int n = 0;
      if (nodes) fail("duplicate 'nodes' header");
      if (!(line >> n) || n <= 0) fail("expected 'nodes N' with N > 0");
      nodes = n;
    } else if (keyword == "slots") {
      if (!(line >> slots) || slots <= 0) fail("expected 'slots K' with K > 0");
    } else if (keyword == "link") {
      int a = 0;
      int b = 0;
      if (!(line >> a >> b)) fail("expected 'link A B [length_km]'");
      double length = 1.0;
      if (std::string tok; line >> tok) {
        std::size_t used = 0;
        try {
          length = std::stod(tok, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != tok.size()) fail("bad link length '" + tok + "'");
      }
      links.push_back({NodeId(a), NodeId(b), length});
    } else {
      fail("unknown keyword '" + keyword + "'");
    }
    if (std::string extra; line >> extra) fail("trailing token '" + extra + "'");
  }
  if (!nodes) throw ParseError("missing 'nodes N' header");
  return Topology(*nodes, std::move(links), slots);
}

Topology load_topology(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open topology file " + path.string());
  return parse_topology(in);
}

std::string serialize_topology(const Topology& t) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "nodes " << t.node_count() << '\n';
  if (t.slot_count() != kDefaultSlotCount) out << "slots " << t.slot_count() << '\n';
  for (const Link& l : t.links()) out << "link " << l.a << ' ' << l.b << ' ' << l.length_km << '\n';
  return out.str();
}

}  // namespace eonsim
