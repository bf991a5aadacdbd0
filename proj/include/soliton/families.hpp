#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "soliton/asymptotics.hpp"
#include "soliton/equilibria.hpp"
#include "soliton/geometry.hpp"
#include "soliton/integrator.hpp"

namespace soliton {

/// zeta: quaternionic, out of P_HP.  gamma: quaternionic, out of P_dot.
/// gamma_tilde: octonionic, out of P_O.
enum class FamilyKind { zeta, gamma, gamma_tilde };
std::string_view to_string(FamilyKind k);
FamilyKind family_kind_from_string(std::string_view name);

Family family_of(FamilyKind k);
EquilibriumLabel equilibrium_of(FamilyKind k);
/// 4 for zeta and gamma, 3 for gamma_tilde (s1, s3, s4).
std::size_t shoot_dim(FamilyKind k);

/// Normalizes s to the unit sphere and enforces the sign domains of each
/// family and the coupling between epsilon and s3. s4 = 0 needs einstein.
ShootSpec validate_spec(FamilyKind family, const std::vector<double>& s, int epsilon,
                        bool einstein = false, double delta = 1e-7);

struct ExpectedRow {
  AsymptoticClass cls = AsymptoticClass::inconclusive;
  Base base = Base::none;
  bool base_asserted = true;
  std::string row;
  std::string caveat;
};

/// Sign-pattern lookup. Never looks at numerics.
ExpectedRow expected_class(FamilyKind family, const ShootSpec& spec, int epsilon);

/// (n+3) s2 + eps s3, before normalization.
double ke_parameter(double s2, double s3, int epsilon, int n);

enum class Verdict { matches, mismatch, inconclusive };
std::string_view to_string(Verdict v);

struct RunOptions {
  IntegratorConfig integrator;
  /// Unset: normalize_C when steady (and not Einstein), raw otherwise.
  std::optional<Gauge> gauge;
  ResidualOptions residual;
  ClassifyOptions classify;
  /// Rerun with delta / 2 and report the change of mu^2, nu^2, C.
  bool sensitivity = false;
  bool keep_series = true;

  double residual_tol = 1e-5;
  double q_identity_tol = 1e-8;
  double conserved_tol = 1e-6;
  double round_fs_tol = 1e-8;
  double ke_tol = 1e-6;
};

struct MonitorSummary {
  std::string terminal_reason;
  double eta_final = 0;
  std::size_t samples = 0;
  std::size_t accepted_steps = 0, rejected_steps = 0;
  std::vector<InvariantSet> sets;
  std::vector<std::pair<InvariantSet, double>> worst_margin;
  std::vector<std::pair<InvariantSet, double>> worst_equality;
  std::vector<EventRecord> events;
  double max_q_identity_residual = 0;
  double conserved_rel_spread = 0;
  double y1_max_increase = 0;
  double max_residual = 0;
  double max_potential_residual = 0;
  std::optional<RegularityReport> regularity;
};

struct Sensitivity {
  double d_mu_sq = 0, d_nu_sq = 0, d_C = 0;
};

struct FamilyRun {
  explicit FamilyRun(const SystemParams& p) : params(p), trajectory(p), profile(p) {}

  FamilyKind family = FamilyKind::gamma;
  SystemParams params;
  ShootSpec spec;
  ExpectedRow expected;
  AsymptoticReport report;
  MonitorSummary monitors;
  std::optional<Sensitivity> sensitivity;
  Verdict verdict = Verdict::inconclusive;
  /// Stage that failed or the checks that did not pass; empty when clean.
  std::vector<std::string> problems;

  Trajectory trajectory;
  SolitonProfile profile;
};

/// seed -> integrate -> reconstruct -> classify, with every monitor on.
/// Validation errors and SeedOutOfRegion propagate; pipeline errors become an
/// inconclusive verdict naming the stage.
FamilyRun run_family(FamilyKind family, int m, const std::vector<double>& s, int epsilon,
                     const RunOptions& options = {}, bool einstein = false, double delta = 1e-7);

/// Invariant sets worth watching for this spec.
std::vector<InvariantSet> monitor_sets_for(FamilyKind family, const ShootSpec& spec, int epsilon,
                                           int n);

}  // namespace soliton
