#ifndef EONSIM_REPORT_HPP
#define EONSIM_REPORT_HPP

#include <filesystem>
#include <ostream>
#include <string>

#include "eonsim/centrality.hpp"
#include "eonsim/engine.hpp"

namespace eonsim {

inline constexpr const char* kResultsHeader =
    "scenario,load_erlang,replication,seed,requests,blocked,rbp,bandwidth_requested_ghz,bandwidth_blocked_ghz,bbp";
inline constexpr const char* kCurvesHeader = "scenario,load_erlang,mean_rbp,mean_bbp";

/// Real formatted with 10 significant digits ("%.10g").
[[nodiscard]] std::string format_real(double x);

/// One row per (scenario, load, replication), in that order.
void write_results_csv(std::ostream& out, const SweepResult& r);
/// One row per (scenario, load) with replication means.
void write_curves_csv(std::ostream& out, const SweepResult& r);

/// Writes results.csv, curves.csv and plots/<scenario>.{rbp,bbp}.dat under dir.
void write_sweep_outputs(const std::filesystem::path& dir, const SweepResult& r);

void write_centrality_csv(std::ostream& out, const CentralityVector& degree, const Eigen::VectorXd& raw_betweenness,
                          const CentralityVector& nbc);

}  // namespace eonsim

#endif  // EONSIM_REPORT_HPP
