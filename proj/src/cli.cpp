#include "eonsim/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "eonsim/centrality.hpp"
#include "eonsim/engine.hpp"
#include "eonsim/experiments.hpp"
#include "eonsim/report.hpp"

namespace eonsim {

std::vector<double> parse_load_list(const std::string& text) {
  auto number = [&](const std::string& tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size() || !(v > 0.0)) throw ConfigError("bad load '" + tok + "' in '" + text + "'");
    return v;
  };
  std::vector<double> out;
  if (text.empty()) throw ConfigError("load list is empty");
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw ConfigError("load range must be start:stop:step, got '" + text + "'");
    const double lo = number(parts[0]);
    const double hi = number(parts[1]);
    const double step = number(parts[2]);
    if (hi < lo) throw ConfigError("load range '" + text + "' is decreasing");
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long k = 0; k <= n; ++k) out.push_back(lo + static_cast<double>(k) * step);
  } else {
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');) out.push_back(number(p));
  }
  if (out.empty()) throw ConfigError("load list is empty");
  return out;
}

namespace {

struct RunConfig {
  std::string topology = "nsfnet";
  std::string scenario_file;
  std::string preset_id;
  std::optional<std::string> loads;
  std::int64_t requests = 20000;
  std::size_t replications = 3;
  std::optional<std::uint64_t> seed;
  bool paper_scale = false;
  std::string out_dir = "eonsim-out";
  std::string load_basis;
  std::int64_t warmup = 0;
  std::string metric = "length";
  bool weighted = false;
  unsigned threads = 0;
  std::string delta_mode = "pointwise";
  std::int64_t audit_every = 0;
};

void add_run_options(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--topology", c.topology, "Built-in name (nsfnet) or topology file")->capture_default_str();
  cmd->add_option("--loads", c.loads, "Loads in Erlang: start:stop:step or a,b,c (default 5:25:5)");
  cmd->add_option("--requests", c.requests, "Counted requests per run")->capture_default_str();
  cmd->add_option("--reps", c.replications, "Replications per (scenario, load)")->capture_default_str();
  cmd->add_option("--seed", c.seed, "Base seed (falls back to $EONSIM_SEED, then 1)");
  cmd->add_flag("--paper-scale", c.paper_scale, "100000 requests x 5 replications");
  cmd->add_option("--out", c.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--load-basis", c.load_basis, "network|per_node (overrides scenario files)");
  cmd->add_option("--warmup", c.warmup, "Uncounted arrivals before statistics start")->capture_default_str();
  cmd->add_option("--metric", c.metric, "Routing metric: hops|length")->capture_default_str();
  cmd->add_flag("--weighted", c.weighted, "Same as --metric length");
  cmd->add_option("--threads", c.threads, "Worker threads for sweep cells (0 = all cores)");
  cmd->add_option("--delta-mode", c.delta_mode, "pointwise|ratio-of-means")->capture_default_str();
  cmd->add_option("--audit-every", c.audit_every, "Audit spectrum state every K events (0 = off)");
}

std::uint64_t resolve_seed(const RunConfig& c) {
  if (c.seed) return *c.seed;
  if (const char* env = std::getenv("EONSIM_SEED"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(std::string("EONSIM_SEED is not an unsigned integer: '") + env + "'");
  }
  return 1;
}

void print_curves(std::ostream& out, const SweepResult& r) {
  out << std::left << std::setw(20) << "scenario" << std::right << std::setw(10) << "load" << std::setw(18) << "RBP"
      << std::setw(18) << "BBP" << '\n';
  for (const SweepCell& c : r.cells) {
    out << std::left << std::setw(20) << c.scenario << std::right << std::setw(10) << format_real(c.load_erlang)
        << std::setw(18) << format_real(c.mean_rbp) << std::setw(18) << format_real(c.mean_bbp) << '\n';
  }
}

void print_deltas(std::ostream& out, const SweepResult& r, DeltaMode mode) {
  const std::size_t base = 0;
  for (std::size_t i = 1; i < r.scenarios.size(); ++i) {
    out << "delta " << r.scenarios[i] << " vs " << r.scenarios[base] << ':';
    for (Metric m : {Metric::rbp, Metric::bbp}) {
      out << ' ' << (m == Metric::rbp ? "RBP " : "BBP ");
      try {
        const RelativeDelta d = avg_relative_delta(r.curve(i, m), r.curve(base, m), mode);
        out << std::showpos << std::fixed << std::setprecision(2) << d.percent << std::noshowpos
            << std::defaultfloat << '%';
        if (!d.excluded_loads.empty()) out << " (" << d.excluded_loads.size() << " zero-baseline loads excluded)";
      } catch (const ConfigError&) {
        out << "n/a (baseline never blocks; try --load-basis per_node)";
      }
    }
    out << '\n';
  }
}

int cmd_run(const RunConfig& cfg, std::ostream& out) {
  if (cfg.scenario_file.empty() == cfg.preset_id.empty()) {
    throw ConfigError("give exactly one of --scenario FILE or --preset ID");
  }
  if (cfg.requests < 1) throw ConfigError("--requests must be >= 1");
  if (cfg.replications < 1) throw ConfigError("--reps must be >= 1");
  if (cfg.warmup < 0) throw ConfigError("--warmup must be >= 0");

  const Topology topo = topology_by_name(cfg.topology);
  std::optional<LoadBasis> basis;
  if (!cfg.load_basis.empty()) basis = parse_load_basis(cfg.load_basis);

  std::vector<ScenarioSpec> specs;
  std::vector<double> loads;
  if (!cfg.preset_id.empty()) {
    PresetOptions po;
    if (basis) po.load_basis = *basis;
    StudyPreset p = preset(parse_study_id(cfg.preset_id), topo, po);
    specs = std::move(p.scenarios);
    loads = std::move(p.loads);
  } else {
    ScenarioFile f = load_scenario_file(cfg.scenario_file, topo);
    specs = std::move(f.scenarios);
    loads = f.loads.empty() ? std::vector<double>{specs.front().load_erlang} : std::move(f.loads);
    if (basis) {
      for (ScenarioSpec& s : specs) s.load_basis = *basis;
    }
  }
  if (cfg.loads) loads = parse_load_list(*cfg.loads);

  SweepOptions so;
  so.run.metric = cfg.weighted ? PathMetric::length : parse_path_metric(cfg.metric);
  so.run.warmup = cfg.warmup;
  so.run.audit_every = cfg.audit_every;
  so.threads = cfg.threads;
  DeltaMode mode = DeltaMode::pointwise;
  if (cfg.delta_mode == "ratio-of-means") {
    mode = DeltaMode::ratio_of_means;
  } else if (cfg.delta_mode != "pointwise") {
    throw ConfigError("unknown --delta-mode '" + cfg.delta_mode + "'");
  }

  const std::uint64_t seed = resolve_seed(cfg);
  const SweepResult r = sweep(topo, specs, loads, cfg.requests, cfg.replications, seed, so);
  write_sweep_outputs(cfg.out_dir, r);

  out << "seed " << seed << ", " << cfg.requests << " requests x " << cfg.replications << " replications, metric "
      << to_string(so.run.metric) << ", load basis " << to_string(specs.front().load_basis) << '\n';
  print_curves(out, r);
  print_deltas(out, r, mode);
  out << "wrote " << (std::filesystem::path(cfg.out_dir) / "results.csv").string() << " and curves.csv\n";
  return 0;
}

int cmd_centrality(const std::string& topology, bool csv, const std::string& out_dir, const std::string& metric,
                   const std::string& counting, std::ostream& out) {
  const Topology t = topology_by_name(topology);
  BetweennessOptions opts;
  opts.metric = parse_path_metric(metric);
  if (counting == "routed") {
    opts.counting = PathCounting::routed;
  } else if (counting == "all") {
    opts.counting = PathCounting::all_shortest;
  } else {
    throw ConfigError("unknown --counting '" + counting + "' (expected routed|all)");
  }
  const CentralityVector deg = degree_centrality(t);
  const Eigen::VectorXd raw = opts.counting == PathCounting::routed ? routed_betweenness(t, opts.metric)
                                                                    : all_paths_betweenness<double>(t, opts.metric);
  const CentralityVector nbc = betweenness_centrality(t, opts);

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream f(std::filesystem::path(out_dir) / "centrality.csv", std::ios::binary);
    if (!f) throw Error("cannot write centrality.csv in " + out_dir);
    write_centrality_csv(f, deg, raw, nbc);
  }
  if (csv) {
    write_centrality_csv(out, deg, raw, nbc);
    return 0;
  }
  out << std::setw(6) << "node" << std::setw(8) << "degree" << std::setw(14) << "transit" << std::setw(10) << "NBC"
      << '\n';
  for (int i = 0; i < t.node_count(); ++i) {
    const NodeId n = NodeId::from_index(static_cast<std::size_t>(i));
    out << std::setw(6) << n << std::setw(8) << deg[n] << std::setw(14) << format_real(raw(i)) << std::setw(10)
        << std::fixed << std::setprecision(4) << nbc[n] << std::defaultfloat << '\n';
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Elastic optical network blocking simulator (SP-FF)", "eonsim"};
  app.require_subcommand(1);

  std::string c_topology = "nsfnet";
  bool c_csv = false;
  std::string c_out;
  std::string c_metric = "length";
  std::string c_counting = "routed";
  auto* cent = app.add_subcommand("centrality", "Degree and node betweenness table");
  cent->add_option("--topology", c_topology, "Built-in name (nsfnet) or topology file")->capture_default_str();
  cent->add_flag("--csv", c_csv, "Print CSV instead of a table");
  cent->add_option("--out", c_out, "Also write DIR/centrality.csv");
  cent->add_option("--metric", c_metric, "Path metric: hops|length")->capture_default_str();
  cent->add_option("--counting", c_counting, "routed|all shortest paths")->capture_default_str();

  RunConfig run_cfg;
  auto* run = app.add_subcommand("run", "Run a scenario file or preset over a load sweep");
  run->add_option("--scenario", run_cfg.scenario_file, "Scenario JSON file");
  run->add_option("--preset", run_cfg.preset_id, "hp-location|hp-count|hp-rate|hp-closed");
  add_run_options(run, run_cfg);

  RunConfig preset_cfg;
  auto* pre = app.add_subcommand("preset", "Run one of the hotspot studies");
  pre->add_option("id", preset_cfg.preset_id, "hp-location|hp-count|hp-rate|hp-closed")->required();
  add_run_options(pre, preset_cfg);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  auto finish_scale = [](CLI::App* cmd, RunConfig& c) {
    if (c.paper_scale) {
      if (cmd->count("--requests") == 0) c.requests = 100000;
      if (cmd->count("--reps") == 0) c.replications = 5;
    }
  };

  try {
    if (cent->parsed()) return cmd_centrality(c_topology, c_csv, c_out, c_metric, c_counting, out);
    RunConfig& cfg = run->parsed() ? run_cfg : preset_cfg;
    finish_scale(run->parsed() ? run : pre, cfg);
    return cmd_run(cfg, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace eonsim
