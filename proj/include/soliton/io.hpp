#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "soliton/families.hpp"
#include "soliton/sweep.hpp"

namespace soliton {

inline constexpr int kReportSchemaVersion = 1;

struct RunConfig {
  FamilyKind family = FamilyKind::gamma;
  int m = 1;
  int epsilon = 0;
  std::vector<double> s;
  double delta = 1e-7;
  std::optional<Gauge> gauge;
  bool einstein = false;
  IntegratorConfig integrator;
  std::filesystem::path out_dir = ".";
  std::string prefix = "run";
  bool trajectory_csv = true;
  bool profile_csv = true;
  bool report_json = true;
  bool plot_svg = false;
  bool strict = false;
};

/// Flat key-value JSON: family, m, epsilon, s, delta, gauge, einstein, rtol,
/// atol, eta_max, max_step, sample_stride, out_dir, prefix, trajectory_csv,
/// profile_csv, report_json, plot_svg, strict. Unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

/// Writes through a temporary file in the same directory and renames it.
void atomic_write(const std::filesystem::path& path, const std::string& content);

/// "# family=... m=... epsilon=... C=... gauge=..." followed by the column row.
std::string csv_header_line(const SystemParams& params, double C, Gauge gauge);

/// eta, X1, X2, X3, Y1, Y2, Y3, W, Q, H, G, t, f, fdot, conserved. Octonionic
/// runs write X1 = 0, Y1 = 1. fdot is in the raw gauge.
std::string trajectory_csv(const Trajectory& trajectory);
/// t, a, b, c, f, fdot in the profile's gauge.
std::string profile_csv(const SolitonProfile& profile);

struct CsvTable {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::optional<std::string> meta_value(const std::string& key) const;
  std::size_t column(const std::string& name) const;
};

/// Parses the files written above. Throws InvalidArgument on malformed input.
CsvTable parse_csv(const std::string& text);

/// Rebuilds params, C and gauge from the header and the samples from the rows.
SolitonProfile profile_from_csv(const CsvTable& table);
/// Rebuilds the states (and stored channels) of a trajectory CSV.
Trajectory trajectory_from_csv(const CsvTable& table);

nlohmann::json to_json(const AsymptoticReport& r);
nlohmann::json to_json(const FamilyRun& run);
nlohmann::json to_json(const ResidualSeries& r, bool include_series = false);

/// s..., normalized s..., mu_sq, nu_sq, C, classification, base, expected,
/// expected_base, verdict, problems.
std::string sweep_csv(const std::vector<SweepRow>& rows);
nlohmann::json sweep_summary(const std::vector<SweepRow>& rows);

struct PlotSeries {
  std::string name;
  std::vector<double> y;
};

/// Static SVG line plot of several series against a shared x.
std::string svg_plot(const std::string& title, const std::string& xlabel,
                     const std::vector<double>& x, const std::vector<PlotSeries>& series,
                     bool log_x = false);

/// Files written for one solve, in order.
std::vector<std::filesystem::path> write_run_artifacts(const RunConfig& config, const FamilyRun& run);

}  // namespace soliton
