#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "soliton/integrator.hpp"
#include "soliton/phase_system.hpp"

namespace soliton {

enum class Gauge { raw, normalize_C };
std::string_view to_string(Gauge g);
Gauge gauge_from_string(std::string_view name);

struct ProfileSample {
  double t = 0, a = 0, b = 0, c = 0, f = 0, fdot = 0;
};

/// Metric data along the run. For the octonionic family a is not part of the
/// metric and is reported equal to b.
struct SolitonProfile {
  explicit SolitonProfile(const SystemParams& p) : params(p) {}

  SystemParams params;
  std::vector<ProfileSample> samples;
  std::vector<double> eta;  ///< source eta of each sample
  double C = 0;
  int d_S = 0;
  Gauge gauge = Gauge::raw;
  /// Length factor applied to the raw reconstruction (1 in the raw gauge).
  double scale = 1.0;
};

/// Pointwise recovery of (t, a, b, c, f, fdot) and the soliton constant.
/// Samples with Y3 < 1e-14 are skipped. Throws ReconstructionDomainError when
/// lengths are not positive or t does not increase.
SolitonProfile reconstruct(const Trajectory& trajectory, Gauge gauge, int d_S = 0);

/// Median of the conserved series over the last half of the run.
double soliton_constant(const Trajectory& trajectory);

struct ResidualSeries {
  std::vector<double> t;
  /// Relative residuals of the metric equations (3 for quaternionic, 2 for
  /// octonionic) followed by the trace equation for f.
  std::vector<std::vector<double>> equations;
  /// Potential equation f'' + (trL - f')f' - eps f - C, relative.
  std::vector<double> potential;
  double max_equation = 0;
  double max_potential = 0;
};

/// Sample thinning for the residual check. Consecutive t are kept at least
/// min(rel_spacing * t, abs_spacing + tail_rel_spacing * t) apart: second
/// differences on a denser grid only amplify integration noise, most of all
/// near the singular orbit. abs_spacing <= 0 picks 0.02 of the soliton length
/// scale (1/sqrt(-C) when steady, 1 when expanding), or rel_spacing times the
/// first sample's t when C vanishes.
struct ResidualOptions {
  int stencil = 7;
  double rel_spacing = 0.3;
  double abs_spacing = 0;
  double tail_rel_spacing = 0.005;
};

/// Finite-difference residuals of the second-order soliton equations at
/// interior samples.
ResidualSeries soliton_residual(const SolitonProfile& profile, const ResidualOptions& opt = {});

struct RegularityReport {
  bool full_collapse = true;
  double a_slope = 0, b_slope = 0, c_slope = 0;
  double c0 = 0;
  double f0 = 0, fdot0 = 0;
  double fddot0 = 0;
  double fddot0_expected = 0;
  double fddot0_rel_error = 0;
  std::size_t samples_used = 0;
};

/// Fits the behaviour of the profile near the singular orbit.
RegularityReport initial_regularity(const SolitonProfile& profile, bool full_collapse);

}  // namespace soliton
