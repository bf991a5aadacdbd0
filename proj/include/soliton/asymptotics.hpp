#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "soliton/equilibria.hpp"
#include "soliton/geometry.hpp"
#include "soliton/integrator.hpp"

namespace soliton {

enum class AsymptoticClass { AP, ACP, AC, einstein_subfamily, inconclusive };
enum class Base { none, standard_sphere, jensen_sphere, fs_cp, nonkahler_cp, bk_sphere };

std::string_view to_string(AsymptoticClass c);
std::string_view to_string(Base b);
AsymptoticClass asymptotic_class_from_string(std::string_view name);
Base base_from_string(std::string_view name);

/// A possible limit of (Y1^2, Y3/Y2) along a steady run.
struct LimitPair {
  Rational mu_sq;
  Rational nu_sq;
  Base base = Base::none;
};

/// Quaternionic: (1,1), (1,1/(2m+3)) when mu > 0, (0,1), (0,1/(m+1)) when mu = 0.
/// Octonionic: nu^2 in {1, 3/11}, mu^2 reported as 1 (no Y1 direction).
std::vector<LimitPair> candidate_limits(const SystemParams& params, bool mu_zero);

/// Every candidate of the family, both branches.
std::vector<LimitPair> all_candidate_limits(const SystemParams& params);

struct ParaboloidCoefficients {
  double ca = 0, cb = 0, cc = 0;
};

/// Slopes k in a^2 ~ k t, b^2 ~ k t, c^2 ~ k t as given by the closed-form
/// limit law in terms of (mu^2, nu^2, C). Throws InvalidArgument if C >= 0.
ParaboloidCoefficients paraboloid_coefficients(const SystemParams& params, double mu_sq,
                                               double nu_sq, double C);

/// Least-squares slope of log(hypersurface volume) against log t over the
/// tail t in [t_max / 10, t_max]. Throws InsufficientData if the profile does
/// not cover a decade.
double volume_growth_exponent(const SolitonProfile& profile);

struct ClassifyOptions {
  double q_tol = 1e-3;
  double snap_radius = 5e-2;
  double expanding_x_tol = 1e-2;
  double expanding_weta_tol = 2e-2;
  double cone_tail_tol = 1e-2;
};

struct AsymptoticReport {
  AsymptoticClass classification = AsymptoticClass::inconclusive;
  Base base = Base::none;
  std::string gauge;

  double mu_sq = 0;
  double nu_sq = 0;               ///< last sampled Y3/Y2
  double nu_sq_extrapolated = 0;  ///< Aitken estimate on a geometric eta triple
  std::optional<LimitPair> snapped;
  double snap_distance = 0;
  bool monotone_approach = false;
  double C = 0;

  double Q_final = 0;
  double fdot_final = 0;
  double W_eta_final = 0;
  std::vector<double> X_over_W_final;

  ParaboloidCoefficients predicted;  ///< closed-form slopes (steady, C < 0)
  ParaboloidCoefficients measured;   ///< fitted a^2, b^2, c^2 against t on the tail
  std::array<double, 3> cone_slopes{};      ///< a/t, b/t, c/t at the end (expanding)
  std::array<double, 3> cone_variation{};   ///< |q(t_max) - q(0.9 t_max)| / q(t_max)
  double cigar_radius = 0;
  double a_tail_cauchy = 0;  ///< |a(t_max) - a(0.9 t_max)| / a(t_max)
  std::optional<double> volume_exponent;
  double y1_final = 0;

  std::vector<std::string> failed_checks;
  std::vector<std::string> notes;
};

/// Classifies a completed run. The shoot vector is only used for the s4 = 0
/// (Einstein subfamily) and s2 = 0 (round) cases; the base follows from the
/// measured limit pair.
AsymptoticReport classify(const SystemParams& params, const ShootSpec& spec,
                          const Trajectory& trajectory, const SolitonProfile& profile,
                          const ClassifyOptions& opt = {});

}  // namespace soliton
