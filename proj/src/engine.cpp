#include "eonsim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <queue>
#include <thread>

namespace eonsim {

double rbp(const SimStats& s) {
  if (s.requests_total < 1) throw ConfigError("RBP undefined with zero requests");
  return static_cast<double>(s.requests_blocked) / static_cast<double>(s.requests_total);
}

double bbp(const SimStats& s) {
  if (s.requests_total < 1 || !(s.bandwidth_requested_ghz > 0.0)) throw ConfigError("BBP undefined with zero requests");
  return s.bandwidth_blocked_ghz / s.bandwidth_requested_ghz;
}

namespace {

struct Departure {
  SimTime time;
  std::uint64_t seq;
  ConnectionId id;
  // Min-heap on (time, seq).
  friend bool operator>(const Departure& x, const Departure& y) {
    return x.time != y.time ? x.time > y.time : x.seq > y.seq;
  }
};

}  // namespace

RunTrace run_traced(const Topology& t, const TrafficScenario& s, std::int64_t n_requests, std::uint64_t seed,
                    const RunOptions& opts) {
  if (n_requests < 1) throw ConfigError("run needs at least one request");
  if (opts.warmup < 0) throw ConfigError("warmup must be >= 0");
  if (s.node_count() != t.node_count()) throw ConfigError("scenario and topology disagree on node count");

  const RouteTable routes(t, opts.metric);
  const RequestSampler sampler(s);
  RandomStream rng(seed);
  NetworkState state(t);
  std::priority_queue<Departure, std::vector<Departure>, std::greater<>> departures;
  std::uint64_t seq = 0;

  RunTrace trace;
  SimStats& st = trace.stats;
  st.scenario = s.name;
  st.load_erlang = s.offered_load();
  st.seed = seed;

  std::int64_t events = 0;
  auto after_event = [&] {
    ++events;
    if (opts.audit_every > 0 && events % opts.audit_every == 0) {
      ++trace.audits;
      if (const std::string err = state.audit(); !err.empty()) throw std::logic_error("audit failed: " + err);
    }
  };
  auto release_until = [&](SimTime now) {
    // Departures at exactly `now` go first: capacity is freed before the arrival is served.
    while (!departures.empty() && departures.top().time <= now) {
      state.release(departures.top().id);
      departures.pop();
      after_event();
    }
  };

  SimTime now = 0.0;
  const std::int64_t total = opts.warmup + n_requests;
  for (std::int64_t k = 0; k < total; ++k) {
    const ConnectionRequest req = sampler.sample(rng, now);
    now = req.arrival_time;
    release_until(now);

    const Path& path = routes.route(req.source, req.destination);
    const SlotBlock shape{0, slots_required(req.bandwidth_ghz, t.slot_width_ghz()), kGuardSlots};
    const std::optional<int> start = state.first_fit(path, shape.total());
    const bool counted = k >= opts.warmup;
    if (start) {
      const ActiveConnection& c = state.allocate(req, path, SlotBlock{*start, shape.data_slots, shape.guard_slots});
      departures.push({c.departs_at, seq++, c.id});
    } else if (counted) {
      ++st.requests_blocked;
      st.bandwidth_blocked_ghz += req.bandwidth_ghz;
    }
    if (counted) {
      ++st.requests_total;
      st.bandwidth_requested_ghz += req.bandwidth_ghz;
    }
    after_event();
  }

  if (opts.drain) release_until(std::numeric_limits<SimTime>::infinity());
  trace.active_at_end = state.active().size();
  trace.grids_empty_at_end = std::all_of(state.grids().begin(), state.grids().end(),
                                         [](const SpectrumGrid& g) { return g.empty(); });
  return trace;
}

SimStats run(const Topology& t, const TrafficScenario& s, std::int64_t n_requests, std::uint64_t seed,
             const RunOptions& opts) {
  return run_traced(t, s, n_requests, seed, opts).stats;
}

std::uint64_t cell_seed(std::uint64_t base_seed, std::size_t load_index, std::size_t replication) {
  // Chained splitmix64: distinct (load, replication) pairs give unrelated streams.
  std::uint64_t h = mix_seed(base_seed);
  h = mix_seed(h ^ (0x100000001B3ULL * (static_cast<std::uint64_t>(load_index) + 1)));
  h = mix_seed(h ^ (0xC2B2AE3D27D4EB4FULL * (static_cast<std::uint64_t>(replication) + 1)));
  return h;
}

const SweepCell& SweepResult::cell(std::size_t scenario, std::size_t load) const {
  return cells.at(scenario * loads.size() + load);
}

Curve SweepResult::curve(std::size_t scenario, Metric m) const {
  Curve c{scenarios.at(scenario), loads, Eigen::VectorXd(static_cast<Eigen::Index>(loads.size()))};
  for (std::size_t j = 0; j < loads.size(); ++j) {
    const SweepCell& x = cell(scenario, j);
    c.values(static_cast<Eigen::Index>(j)) = m == Metric::rbp ? x.mean_rbp : x.mean_bbp;
  }
  return c;
}

Curve SweepResult::replication_curve(std::size_t scenario, std::size_t replication, Metric m) const {
  Curve c{scenarios.at(scenario), loads, Eigen::VectorXd(static_cast<Eigen::Index>(loads.size()))};
  for (std::size_t j = 0; j < loads.size(); ++j) {
    const SimStats& st = rows.at((scenario * loads.size() + j) * replications + replication).stats;
    c.values(static_cast<Eigen::Index>(j)) = m == Metric::rbp ? rbp(st) : bbp(st);
  }
  return c;
}

std::size_t SweepResult::scenario_index(const std::string& name) const {
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    if (scenarios[i] == name) return i;
  }
  throw ConfigError("no scenario named '" + name + "' in sweep");
}

SweepResult sweep(const Topology& t, const std::vector<ScenarioSpec>& specs, const std::vector<double>& loads,
                  std::int64_t n_requests, std::size_t replications, std::uint64_t base_seed,
                  const SweepOptions& opts) {
  if (specs.empty()) throw ConfigError("sweep needs at least one scenario");
  if (loads.empty()) throw ConfigError("sweep needs at least one load");
  if (replications < 1) throw ConfigError("sweep needs at least one replication");
  if (n_requests < 1) throw ConfigError("sweep needs at least one request per run");

  SweepResult result;
  result.loads = loads;
  result.replications = replications;
  for (const ScenarioSpec& s : specs) result.scenarios.push_back(s.name);

  // Build every scenario up front so configuration errors surface before any simulation.
  std::vector<TrafficScenario> built;
  for (const ScenarioSpec& s : specs) {
    for (double load : loads) {
      ScenarioSpec at = s;
      at.load_erlang = load;
      built.push_back(build_scenario(at, t));
    }
  }

  const std::size_t n_cells = specs.size() * loads.size() * replications;
  result.rows.resize(n_cells);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::string failed_cell;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t k = next++; k < n_cells; k = next++) {
      const std::size_t rep = k % replications;
      const std::size_t j = (k / replications) % loads.size();
      const std::size_t i = k / (replications * loads.size());
      try {
        SimStats st = run(t, built[i * loads.size() + j], n_requests, cell_seed(base_seed, j, rep), opts.run);
        st.load_erlang = loads[j];
        result.rows[k] = SweepRow{i, j, rep, std::move(st)};
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
          failed_cell = specs[i].name + " @ " + std::to_string(loads[j]) + " Erlang, replication " + std::to_string(rep);
        }
        next = n_cells;
      }
    }
  };

  unsigned threads = opts.threads != 0 ? opts.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_cells));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
  }
  if (failure) {
    try {
      std::rethrow_exception(failure);
    } catch (const std::exception& e) {
      throw Error("sweep cell " + failed_cell + " failed: " + e.what());
    }
  }

  for (std::size_t i = 0; i < specs.size(); ++i) {
    for (std::size_t j = 0; j < loads.size(); ++j) {
      SweepCell c{specs[i].name, loads[j], 0.0, 0.0};
      for (std::size_t r = 0; r < replications; ++r) {
        const SimStats& st = result.rows[(i * loads.size() + j) * replications + r].stats;
        c.mean_rbp += rbp(st);
        c.mean_bbp += bbp(st);
      }
      c.mean_rbp /= static_cast<double>(replications);
      c.mean_bbp /= static_cast<double>(replications);
      result.cells.push_back(std::move(c));
    }
  }
  return result;
}

RelativeDelta avg_relative_delta(const Curve& a, const Curve& baseline, DeltaMode mode) {
  if (a.loads != baseline.loads || a.values.size() != baseline.values.size()) {
    throw ConfigError("curves '" + a.scenario + "' and '" + baseline.scenario + "' use different load grids");
  }
  if (a.values.size() == 0) throw ConfigError("empty curves");
  RelativeDelta out;
  if (mode == DeltaMode::ratio_of_means) {
    const double b = baseline.values.mean();
    if (!(b > 0.0)) throw ConfigError("baseline '" + baseline.scenario + "' is zero at every load");
    out.percent = 100.0 * (a.values.mean() - b) / b;
    return out;
  }
  double sum = 0.0;
  int used = 0;
  for (Eigen::Index k = 0; k < a.values.size(); ++k) {
    const double b = baseline.values(k);
    if (b > 0.0) {
      sum += (a.values(k) - b) / b;
      ++used;
    } else {
      out.excluded_loads.push_back(a.loads[static_cast<std::size_t>(k)]);
    }
  }
  if (used == 0) throw ConfigError("baseline '" + baseline.scenario + "' is zero at every load");
  out.percent = 100.0 * sum / used;
  return out;
}

}  // namespace eonsim
