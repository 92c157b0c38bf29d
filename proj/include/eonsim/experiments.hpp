#ifndef EONSIM_EXPERIMENTS_HPP
#define EONSIM_EXPERIMENTS_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "eonsim/traffic.hpp"

namespace eonsim {

enum class StudyId { hp_location, hp_count, hp_rate, hp_closed };

[[nodiscard]] std::string_view to_string(StudyId id);
/// Accepts the CLI names hp-location, hp-count, hp-rate, hp-closed.
[[nodiscard]] StudyId parse_study_id(std::string_view s);

inline const std::vector<double> kStudyLoads = {5.0, 10.0, 15.0, 20.0, 25.0};

struct PresetOptions {
  LoadBasis load_basis = LoadBasis::network;
  double mean_holding = 1.0;
  /// Share of requests addressed to hotspots in the hotspot-count study.
  double hotspot_mass = 0.8;
};

/// The scenario list of one study. scenarios.front() is always the uniform baseline.
struct StudyPreset {
  StudyId id = StudyId::hp_location;
  std::vector<ScenarioSpec> scenarios;
  std::vector<double> loads = kStudyLoads;

  [[nodiscard]] const ScenarioSpec& baseline() const { return scenarios.front(); }
};

/// Hotspot sets chosen by betweenness rank on `t`.
struct HotspotSets {
  std::vector<NodeId> lowest4;
  std::vector<NodeId> highest4;
  std::vector<NodeId> lowest6;
};

/// Sorted rank-derived sets. On the built-in NSFNET these are checked against
/// {1,3,10,14}, {4,8,9,12} and {1,3,10,11,13,14}; a mismatch throws std::logic_error.
[[nodiscard]] HotspotSets hotspot_sets(const Topology& t);

/// Throws ConfigError if the topology has fewer than 7 nodes (6 hotspots plus a cold node).
[[nodiscard]] StudyPreset preset(StudyId id, const Topology& t, const PresetOptions& opts = {});

/// Parsed scenario file: one or more specs plus an optional load sweep.
struct ScenarioFile {
  std::vector<ScenarioSpec> scenarios;
  std::vector<double> loads;  // empty when the file names none
};

/// JSON scenario document. Either a single scenario object or
/// {"scenarios": [...], "NL": [...]}. Scenario fields:
///   name, kind, hotspots ([ids] or {"rank": "lowest"|"highest", "count": k}),
///   p_hot, p_cold, alpha, NL (number or list), mean_holding,
///   bandwidth_range [min, max], load_basis.
[[nodiscard]] ScenarioFile parse_scenario_file(std::string_view json_text, const Topology& t);
[[nodiscard]] ScenarioFile load_scenario_file(const std::filesystem::path& path, const Topology& t);

}  // namespace eonsim

#endif  // EONSIM_EXPERIMENTS_HPP
