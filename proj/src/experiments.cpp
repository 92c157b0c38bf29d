#include "eonsim/experiments.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "eonsim/centrality.hpp"

namespace eonsim {

std::string_view to_string(StudyId id) {
  switch (id) {
    case StudyId::hp_location: return "hp-location";
    case StudyId::hp_count: return "hp-count";
    case StudyId::hp_rate: return "hp-rate";
    case StudyId::hp_closed: return "hp-closed";
  }
  return "?";
}

StudyId parse_study_id(std::string_view s) {
  for (StudyId id : {StudyId::hp_location, StudyId::hp_count, StudyId::hp_rate, StudyId::hp_closed}) {
    if (s == to_string(id)) return id;
  }
  throw ConfigError("unknown preset '" + std::string(s) + "' (expected hp-location|hp-count|hp-rate|hp-closed)");
}

namespace {

std::vector<NodeId> ids(std::initializer_list<int> v) {
  std::vector<NodeId> out;
  for (int x : v) out.emplace_back(x);
  return out;
}

std::vector<NodeId> sorted(std::vector<NodeId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

ScenarioSpec base_spec(const PresetOptions& opts) {
  ScenarioSpec s;
  s.load_basis = opts.load_basis;
  s.mean_holding = opts.mean_holding;
  s.load_erlang = kStudyLoads.front();
  return s;
}

ScenarioSpec dest_skew(ScenarioSpec s, std::string name, std::vector<NodeId> hot, double p_hot, double p_cold) {
  s.name = std::move(name);
  s.kind = ScenarioKind::dest_skew;
  s.hotspots = std::move(hot);
  s.p_hot = p_hot;
  s.p_cold = p_cold;
  return s;
}

ScenarioSpec rate_scaled(ScenarioSpec s, std::string name, std::vector<NodeId> hot, double alpha) {
  s.name = std::move(name);
  s.kind = ScenarioKind::rate_scaled;
  s.hotspots = std::move(hot);
  s.alpha = alpha;
  return s;
}

}  // namespace

HotspotSets hotspot_sets(const Topology& t) {
  const CentralityVector nbc = betweenness_centrality(t);
  HotspotSets h{sorted(rank_nodes(nbc, 4, RankOrder::lowest)), sorted(rank_nodes(nbc, 4, RankOrder::highest)),
                sorted(rank_nodes(nbc, 6, RankOrder::lowest))};
  if (t == builtin_nsfnet()) {
    if (h.lowest4 != ids({1, 3, 10, 14}) || h.highest4 != ids({4, 8, 9, 12}) ||
        h.lowest6 != ids({1, 3, 10, 11, 13, 14})) {
      throw std::logic_error("NSFNET betweenness ranks no longer give the reference hotspot sets");
    }
  }
  return h;
}

StudyPreset preset(StudyId id, const Topology& t, const PresetOptions& opts) {
  if (t.node_count() < 7) throw ConfigError("presets need a topology with at least 7 nodes");
  const HotspotSets h = hotspot_sets(t);
  const ScenarioSpec base = base_spec(opts);
  const auto n = static_cast<double>(t.node_count());

  StudyPreset p;
  p.id = id;
  p.scenarios.push_back(base);  // "SP-FF", uniform
  switch (id) {
    case StudyId::hp_location:
      p.scenarios.push_back(dest_skew(base, "SP-FF-HP1", h.lowest4, 0.2, 0.02));
      p.scenarios.push_back(dest_skew(base, "SP-FF-HP2", h.highest4, 0.2, 0.02));
      break;
    case StudyId::hp_count: {
      // Hotspot weight m/k each, cold weight (1-m)/(n-k) each: the hotspot set keeps mass m.
      const double m = opts.hotspot_mass;
      p.scenarios.push_back(dest_skew(base, "SP-FF-N4", h.lowest4, m / 4.0, (1.0 - m) / (n - 4.0)));
      p.scenarios.push_back(dest_skew(base, "SP-FF-N6", h.lowest6, m / 6.0, (1.0 - m) / (n - 6.0)));
      break;
    }
    case StudyId::hp_rate:
      for (double alpha : {1.0, 2.0, 4.0, 6.0}) {
        p.scenarios.push_back(
            rate_scaled(base, "SP-FF-" + std::to_string(static_cast<int>(alpha)) + "lambda", h.lowest4, alpha));
      }
      break;
    case StudyId::hp_closed: {
      p.scenarios.push_back(rate_scaled(base, "SP-FF-6lambda", h.lowest4, 6.0));
      ScenarioSpec closed = dest_skew(base, "SP-FF-6lambda-HR", h.lowest4, 0.2, 0.02);
      closed.kind = ScenarioKind::closed_region;
      closed.alpha = 6.0;
      p.scenarios.push_back(closed);
      break;
    }
  }
  return p;
}

namespace {

using nlohmann::json;

std::vector<double> parse_loads(const json& j) {
  std::vector<double> out;
  if (j.is_number()) {
    out.push_back(j.get<double>());
  } else if (j.is_array()) {
    for (const json& x : j) out.push_back(x.get<double>());
  } else {
    throw ConfigError("NL must be a number or a list of numbers");
  }
  return out;
}

ScenarioSpec parse_spec(const json& j, const Topology& t, std::vector<double>& loads) {
  ScenarioSpec s;
  s.kind = parse_scenario_kind(j.at("kind").get<std::string>());
  s.name = j.value("name", std::string("SP-FF-") + std::string(to_string(s.kind)));
  if (j.contains("hotspots")) {
    const json& h = j.at("hotspots");
    if (h.is_array()) {
      for (const json& x : h) s.hotspots.emplace_back(x.get<int>());
    } else {
      const CentralityVector nbc = betweenness_centrality(t);
      s.hotspots = sorted(rank_nodes(nbc, h.at("count").get<int>(), parse_rank_order(h.at("rank").get<std::string>())));
    }
  }
  s.p_hot = j.value("p_hot", s.p_hot);
  s.p_cold = j.value("p_cold", s.p_cold);
  s.alpha = j.value("alpha", s.alpha);
  s.mean_holding = j.value("mean_holding", s.mean_holding);
  if (j.contains("bandwidth_range")) {
    const auto r = j.at("bandwidth_range").get<std::vector<double>>();
    if (r.size() != 2) throw ConfigError("bandwidth_range must be [min, max]");
    s.bandwidth_min_ghz = r[0];
    s.bandwidth_max_ghz = r[1];
  }
  if (j.contains("load_basis")) s.load_basis = parse_load_basis(j.at("load_basis").get<std::string>());
  if (j.contains("NL")) {
    const std::vector<double> l = parse_loads(j.at("NL"));
    if (l.empty()) throw ConfigError("NL list is empty");
    s.load_erlang = l.front();
    if (loads.empty()) loads = l;
  }
  (void)build_scenario(s, t);  // validates
  return s;
}

}  // namespace

ScenarioFile parse_scenario_file(std::string_view json_text, const Topology& t) {
  ScenarioFile f;
  try {
    const json doc = json::parse(json_text);
    if (doc.contains("scenarios")) {
      if (doc.contains("NL")) f.loads = parse_loads(doc.at("NL"));
      std::vector<double> ignored;
      for (const json& s : doc.at("scenarios")) f.scenarios.push_back(parse_spec(s, t, f.loads.empty() ? f.loads : ignored));
    } else {
      f.scenarios.push_back(parse_spec(doc, t, f.loads));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("scenario file: ") + e.what());
  }
  if (f.scenarios.empty()) throw ConfigError("scenario file defines no scenarios");
  return f;
}

ScenarioFile load_scenario_file(const std::filesystem::path& path, const Topology& t) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario_file(text.str(), t);
}

}  // namespace eonsim
