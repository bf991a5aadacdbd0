#include "soliton/families.hpp"

#include <cmath>
#include <sstream>

#include "soliton/errors.hpp"

namespace soliton {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

SystemParams params_for(FamilyKind family, int m, int epsilon) {
  return family == FamilyKind::gamma_tilde ? SystemParams::octonionic(epsilon)
                                           : SystemParams::quaternionic(m, epsilon);
}

// Component accessors in the family's own shoot layout.
double s1_of(const ShootSpec& sp) { return sp.s[0]; }
double s2_of(FamilyKind f, const ShootSpec& sp) { return f == FamilyKind::gamma_tilde ? 0.0 : sp.s[1]; }
double s3_of(FamilyKind f, const ShootSpec& sp) { return f == FamilyKind::gamma_tilde ? sp.s[1] : sp.s[2]; }
double s4_of(const ShootSpec& sp) { return sp.s.back(); }

bool on_ke_curve(FamilyKind f, const ShootSpec& sp, int epsilon, int n) {
  if (f != FamilyKind::gamma || s1_of(sp) != 0) return false;
  const double s4 = s4_of(sp);
  const double want = ke_parameter(s2_of(f, sp), s3_of(f, sp), epsilon, n);
  return s2_of(f, sp) > 0 && std::abs(s4 - want) <= 1e-9 * std::max(1.0, s4);
}

struct Pipeline {
  Trajectory trajectory;
  SolitonProfile profile;
  AsymptoticReport report;
};

Pipeline pipeline(FamilyKind family, const SystemParams& params, const ShootSpec& spec,
                  const RunOptions& opt, Gauge gauge, const std::vector<InvariantSet>& sets,
                  std::string& stage) {
  stage = "seed";
  const Equilibrium eq = critical_point(params, equilibrium_of(family));
  const UnstableBasis basis = unstable_basis(params, eq.label);
  const PhaseState seed = seed_state(params, eq, basis, spec);
  const ChannelInit init = channels_from_seed(params, seed, eq.d_S);
  stage = "integrate";
  Trajectory tr = integrate(params, seed, init, opt.integrator, sets, spec.einstein_subfamily);
  stage = "reconstruct";
  SolitonProfile prof = reconstruct(tr, gauge, eq.d_S);
  stage = "classify";
  AsymptoticReport rep = classify(params, spec, tr, prof, opt.classify);
  return {std::move(tr), std::move(prof), std::move(rep)};
}

}  // namespace

std::string_view to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::zeta: return "zeta";
    case FamilyKind::gamma: return "gamma";
    case FamilyKind::gamma_tilde: return "gamma_tilde";
  }
  return "?";
}

FamilyKind family_kind_from_string(std::string_view name) {
  if (name == "zeta") return FamilyKind::zeta;
  if (name == "gamma") return FamilyKind::gamma;
  if (name == "gamma_tilde") return FamilyKind::gamma_tilde;
  throw InvalidArgument("unknown family '" + std::string(name) +
                        "' (expected zeta, gamma or gamma_tilde)");
}

Family family_of(FamilyKind k) {
  return k == FamilyKind::gamma_tilde ? Family::octonionic : Family::quaternionic;
}

EquilibriumLabel equilibrium_of(FamilyKind k) {
  switch (k) {
    case FamilyKind::zeta: return EquilibriumLabel::P_HP;
    case FamilyKind::gamma: return EquilibriumLabel::P_dot;
    case FamilyKind::gamma_tilde: return EquilibriumLabel::P_O;
  }
  return EquilibriumLabel::P_dot;
}

std::size_t shoot_dim(FamilyKind k) { return k == FamilyKind::gamma_tilde ? 3 : 4; }

ShootSpec validate_spec(FamilyKind family, const std::vector<double>& s, int epsilon,
                        bool einstein, double delta) {
  const std::string name(to_string(family));
  if (epsilon != 0 && epsilon != 1) throw InvalidArgument("epsilon must be 0 or 1");
  if (s.size() != shoot_dim(family)) {
    throw InvalidArgument(name + " takes " + std::to_string(shoot_dim(family)) +
                          " shoot parameters, got " + std::to_string(s.size()));
  }
  double norm = 0;
  for (double v : s) {
    if (!std::isfinite(v)) throw InvalidArgument("shoot parameters must be finite");
    if (v < 0) throw InvalidArgument(name + ": shoot parameters must be non-negative");
    norm += v * v;
  }
  if (norm == 0) throw InvalidArgument("shoot vector is zero");
  if (!(delta > 0) || !std::isfinite(delta)) throw InvalidArgument("delta must be positive");

  ShootSpec sp;
  sp.delta = delta;
  sp.einstein_subfamily = einstein;
  norm = std::sqrt(norm);
  for (double v : s) sp.s.push_back(v / norm);

  if (family == FamilyKind::zeta && !(s1_of(sp) > 0)) {
    throw InvalidArgument("zeta needs s1 > 0 (collapse to HP^m requires the u1 direction)");
  }
  const double s3 = s3_of(family, sp), s4 = s4_of(sp);
  if (epsilon == 0 && s3 != 0) throw InvalidArgument("steady runs (epsilon = 0) need s3 = 0");
  if (epsilon == 1 && !(s3 > 0)) throw InvalidArgument("expanding runs (epsilon = 1) need s3 > 0");
  if (einstein && s4 != 0) throw InvalidArgument("the Einstein subfamily has s4 = 0");
  if (!einstein && !(s4 > 0)) {
    throw InvalidArgument(name + " needs s4 > 0 (s4 = 0 is the Einstein subfamily, pass the flag)");
  }
  return sp;
}

ExpectedRow expected_class(FamilyKind family, const ShootSpec& spec, int epsilon) {
  ExpectedRow e;
  const double s1 = s1_of(spec), s2 = s2_of(family, spec), s3 = s3_of(family, spec);
  const std::string name(to_string(family));
  if (s4_of(spec) == 0) {
    e.cls = AsymptoticClass::einstein_subfamily;
    e.base_asserted = false;
    e.row = name + " with s4 = 0";
    return e;
  }
  if (epsilon == 1 || s3 > 0) {
    e.cls = AsymptoticClass::AC;
    e.base_asserted = false;
    e.row = name + "(..., s3 > 0, s4 > 0) expanding";
    return e;
  }
  switch (family) {
    case FamilyKind::zeta:
      if (s2 > 0) {
        e.cls = AsymptoticClass::ACP;
        e.base = Base::nonkahler_cp;
        e.row = "zeta(s1, s2, 0, s4)";
      } else {
        e.cls = AsymptoticClass::AP;
        e.base = Base::jensen_sphere;
        e.row = "zeta(s1, 0, 0, s4)";
      }
      break;
    case FamilyKind::gamma:
      if (s2 > 0) {
        e.cls = AsymptoticClass::ACP;
        e.base = s1 > 0 ? Base::nonkahler_cp : Base::fs_cp;
        e.row = s1 > 0 ? "gamma(s1, s2, 0, s4)" : "gamma(0, s2, 0, s4)";
      } else {
        e.cls = AsymptoticClass::AP;
        e.base = s1 > 0 ? Base::jensen_sphere : Base::standard_sphere;
        e.row = s1 > 0 ? "gamma(s1, 0, 0, s4)" : "gamma(0, 0, 0, 1)";
      }
      break;
    case FamilyKind::gamma_tilde:
      e.cls = AsymptoticClass::AP;
      e.base = Base::bk_sphere;
      e.row = s1 > 0 ? "gamma_tilde(s1, 0, s4)" : "gamma_tilde(0, 0, 1)";
      if (s1 == 0) {
        e.base_asserted = false;
        e.caveat = "s1 = 0 keeps Y2 = Y3, so nu^2 = 1 and the base is not asserted";
      }
      break;
  }
  return e;
}

double ke_parameter(double s2, double s3, int epsilon, int n) {
  if (s2 < 0 || s3 < 0) throw InvalidArgument("ke_parameter needs s2, s3 >= 0");
  return (n + 3) * s2 + epsilon * s3;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::matches: return "matches";
    case Verdict::mismatch: return "mismatch";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

std::vector<InvariantSet> monitor_sets_for(FamilyKind family, const ShootSpec& spec, int epsilon,
                                           int n) {
  std::vector<InvariantSet> sets;
  if (family == FamilyKind::gamma_tilde) {
    sets.push_back(InvariantSet::A_tilde);
  } else {
    sets.push_back(InvariantSet::A);
    if (s2_of(family, spec) == 0) sets.push_back(InvariantSet::RS_round);
    if (family == FamilyKind::gamma && s1_of(spec) == 0) sets.push_back(InvariantSet::RS_FS);
    if (on_ke_curve(family, spec, epsilon, n)) sets.push_back(InvariantSet::RS_KE);
  }
  if (epsilon == 0) sets.push_back(InvariantSet::RS_steady);
  return sets;
}

FamilyRun run_family(FamilyKind family, int m, const std::vector<double>& s, int epsilon,
                     const RunOptions& opt, bool einstein, double delta) {
  const SystemParams params = params_for(family, m, epsilon);
  FamilyRun run(params);
  run.family = family;
  run.spec = validate_spec(family, s, epsilon, einstein, delta);
  run.expected = expected_class(family, run.spec, epsilon);
  opt.integrator.validate();

  const bool steady = epsilon == 0;
  Gauge gauge = opt.gauge.value_or(steady && !einstein ? Gauge::normalize_C : Gauge::raw);
  if (gauge == Gauge::normalize_C && (!steady || einstein)) gauge = Gauge::raw;

  const auto sets = monitor_sets_for(family, run.spec, epsilon, params.n());
  run.monitors.sets = sets;
  std::string stage;
  try {
    Pipeline pl = pipeline(family, params, run.spec, opt, gauge, sets, stage);
    run.trajectory = std::move(pl.trajectory);
    run.profile = std::move(pl.profile);
    run.report = std::move(pl.report);
  } catch (const InvalidArgument& e) {
    if (stage == "seed") throw;
    run.problems.push_back(stage + ": " + e.what());
  } catch (const SeedOutOfRegion&) {
    throw;
  } catch (const std::exception& e) {
    run.problems.push_back(stage + ": " + e.what());
  }

  auto& mon = run.monitors;
  const Trajectory& tr = run.trajectory;
  mon.terminal_reason = std::string(to_string(tr.terminal_reason));
  mon.samples = tr.samples.size();
  mon.eta_final = tr.samples.empty() ? 0.0 : tr.samples.back().eta;
  mon.accepted_steps = tr.accepted_steps;
  mon.rejected_steps = tr.rejected_steps;
  mon.worst_margin = tr.worst_margin;
  mon.worst_equality = tr.worst_equality;
  mon.events = tr.events;

  if (!run.problems.empty()) {
    run.verdict = Verdict::inconclusive;
    return run;
  }

  try {
    const DiagnosticSeries diag = monitor(tr);
    mon.max_q_identity_residual = diag.max_q_identity_residual;
    mon.conserved_rel_spread = diag.conserved_rel_spread;
    mon.y1_max_increase = diag.y1_max_increase;
    const ResidualSeries res = soliton_residual(run.profile, opt.residual);
    mon.max_residual = res.max_equation;
    mon.max_potential_residual = res.max_potential;
    mon.regularity = initial_regularity(run.profile, family != FamilyKind::zeta);
  } catch (const std::exception& e) {
    run.problems.push_back(std::string("diagnostics: ") + e.what());
  }

  auto check = [&](bool ok, const std::string& what) {
    if (!ok) run.problems.push_back(what);
  };
  if (einstein) {
    // Q and H drift off their Einstein values; everything else must hold
    check(tr.terminal_reason != TerminalReason::left_region &&
              tr.terminal_reason != TerminalReason::blow_up,
          "run ended abnormally: " + mon.terminal_reason);
  } else {
    for (const auto& [set, v] : mon.worst_margin) {
      check(v >= -opt.integrator.abort_tol,
            std::string(to_string(set)) + " inequality margin " + fmt(v));
    }
  }
  for (const auto& [set, v] : mon.worst_equality) {
    if (set == InvariantSet::RS_round || set == InvariantSet::RS_FS) {
      check(v < opt.round_fs_tol, std::string(to_string(set)) + " equality residual " + fmt(v));
    } else if (set == InvariantSet::RS_KE) {
      check(v < opt.ke_tol, "RS_KE equality residual " + fmt(v));
    }
  }
  check(mon.max_q_identity_residual < opt.q_identity_tol,
        "Q identity residual " + fmt(mon.max_q_identity_residual));
  if (!einstein) {
    check(mon.conserved_rel_spread < opt.conserved_tol,
          "conserved quantity spread " + fmt(mon.conserved_rel_spread));
  }
  check(mon.max_residual < opt.residual_tol, "soliton equation residual " + fmt(mon.max_residual));
  if (family != FamilyKind::gamma_tilde && s2_of(family, run.spec) > 0) {
    check(mon.y1_max_increase <= 0, "Y1 increased by " + fmt(mon.y1_max_increase));
  }

  if (opt.sensitivity) {
    ShootSpec half = run.spec;
    half.delta = run.spec.delta / 2;
    try {
      const Pipeline pl = pipeline(family, params, half, opt, gauge, sets, stage);
      run.sensitivity = Sensitivity{std::abs(pl.report.mu_sq - run.report.mu_sq),
                                    std::abs(pl.report.nu_sq - run.report.nu_sq),
                                    std::abs(pl.report.C - run.report.C)};
    } catch (const std::exception& e) {
      run.problems.push_back("sensitivity rerun, " + stage + ": " + e.what());
    }
  }

  if (!opt.keep_series) {
    run.trajectory.samples.clear();
    run.trajectory.samples.shrink_to_fit();
    run.profile.samples.clear();
    run.profile.samples.shrink_to_fit();
    run.profile.eta.clear();
  }

  const AsymptoticReport& r = run.report;
  if (r.classification == AsymptoticClass::inconclusive || !run.problems.empty()) {
    run.verdict = Verdict::inconclusive;
    return run;
  }
  const bool same_class = r.classification == run.expected.cls;
  const bool same_base = !run.expected.base_asserted || r.base == run.expected.base;
  run.verdict = same_class && same_base ? Verdict::matches : Verdict::mismatch;
  return run;
}

}  // namespace soliton
