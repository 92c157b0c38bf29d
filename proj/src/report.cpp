#include "eonsim/report.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>

namespace eonsim {

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

namespace {

// Scenario labels are free text from scenario files; quote them when needed.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write " + p.string());
  return out;
}

std::string file_stem(const std::string& s) {
  std::string out;
  for (char c : s) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
  return out;
}

}  // namespace

void write_results_csv(std::ostream& out, const SweepResult& r) {
  out << kResultsHeader << '\n';
  for (const SweepRow& row : r.rows) {
    const SimStats& s = row.stats;
    out << csv_field(r.scenarios[row.scenario_index]) << ',' << format_real(r.loads[row.load_index]) << ','
        << row.replication << ',' << s.seed << ',' << s.requests_total << ',' << s.requests_blocked << ','
        << format_real(rbp(s)) << ',' << format_real(s.bandwidth_requested_ghz) << ','
        << format_real(s.bandwidth_blocked_ghz) << ',' << format_real(bbp(s)) << '\n';
  }
}

void write_curves_csv(std::ostream& out, const SweepResult& r) {
  out << kCurvesHeader << '\n';
  for (const SweepCell& c : r.cells) {
    out << csv_field(c.scenario) << ',' << format_real(c.load_erlang) << ',' << format_real(c.mean_rbp) << ','
        << format_real(c.mean_bbp) << '\n';
  }
}

void write_sweep_outputs(const std::filesystem::path& dir, const SweepResult& r) {
  std::filesystem::create_directories(dir / "plots");
  {
    auto out = open_out(dir / "results.csv");
    write_results_csv(out, r);
  }
  {
    auto out = open_out(dir / "curves.csv");
    write_curves_csv(out, r);
  }
  for (std::size_t i = 0; i < r.scenarios.size(); ++i) {
    for (Metric m : {Metric::rbp, Metric::bbp}) {
      const char* tag = m == Metric::rbp ? "rbp" : "bbp";
      auto out = open_out(dir / "plots" / (file_stem(r.scenarios[i]) + "." + tag + ".dat"));
      out << "# " << r.scenarios[i] << "\n# load_erlang " << tag << '\n';
      const Curve c = r.curve(i, m);
      for (std::size_t j = 0; j < c.loads.size(); ++j) {
        out << format_real(c.loads[j]) << ' ' << format_real(c.values(static_cast<Eigen::Index>(j))) << '\n';
      }
    }
  }
}

void write_centrality_csv(std::ostream& out, const CentralityVector& degree, const Eigen::VectorXd& raw_betweenness,
                          const CentralityVector& nbc) {
  out << "node,degree,betweenness_raw,nbc\n";
  for (int i = 0; i < nbc.size(); ++i) {
    const NodeId n = NodeId::from_index(static_cast<std::size_t>(i));
    out << n << ',' << format_real(degree[n]) << ',' << format_real(raw_betweenness(i)) << ',' << format_real(nbc[n])
        << '\n';
  }
}

}  // namespace eonsim
