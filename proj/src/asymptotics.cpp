#include "soliton/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "soliton/errors.hpp"
#include "soliton/finite_difference.hpp"

namespace soliton {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// First profile index with t >= t_lo.
std::size_t lower_index(const std::vector<ProfileSample>& S, double t_lo) {
  auto it = std::lower_bound(S.begin(), S.end(), t_lo,
                             [](const ProfileSample& s, double t) { return s.t < t; });
  return static_cast<std::size_t>(it - S.begin());
}

// Aitken on three equally spaced samples of the last quarter. Sampling is
// geometric in eta on the tail, so a power-law approach in eta becomes
// geometric here. Falls back to the last value.
double extrapolate(const std::vector<double>& x) {
  const double last = x.back();
  if (x.size() < 12) return last;
  const std::size_t i0 = x.size() - x.size() / 4, i2 = x.size() - 1;
  const std::size_t i1 = (i0 + i2) / 2;
  const double d1 = x[i1] - x[i0], d2 = x[i2] - x[i1];
  if (std::abs(d1) < 1e-12 || std::abs(d2) < 1e-12) return last;
  const double r = d2 / d1;
  if (!(r > 0 && r < 0.95)) return last;
  const double est = x[i2] + d2 * r / (1 - r);
  if (!std::isfinite(est) || std::abs(est - last) > 20 * std::abs(d2)) return last;
  return est;
}

}  // namespace

std::string_view to_string(AsymptoticClass c) {
  switch (c) {
    case AsymptoticClass::AP: return "AP";
    case AsymptoticClass::ACP: return "ACP";
    case AsymptoticClass::AC: return "AC";
    case AsymptoticClass::einstein_subfamily: return "einstein_subfamily";
    case AsymptoticClass::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string_view to_string(Base b) {
  switch (b) {
    case Base::none: return "none";
    case Base::standard_sphere: return "standard_sphere";
    case Base::jensen_sphere: return "jensen_sphere";
    case Base::fs_cp: return "fs_cp";
    case Base::nonkahler_cp: return "nonkahler_cp";
    case Base::bk_sphere: return "bk_sphere";
  }
  return "?";
}

AsymptoticClass asymptotic_class_from_string(std::string_view name) {
  for (auto c : {AsymptoticClass::AP, AsymptoticClass::ACP, AsymptoticClass::AC,
                 AsymptoticClass::einstein_subfamily, AsymptoticClass::inconclusive}) {
    if (to_string(c) == name) return c;
  }
  throw InvalidArgument("unknown asymptotic class '" + std::string(name) + "'");
}

Base base_from_string(std::string_view name) {
  for (auto b : {Base::none, Base::standard_sphere, Base::jensen_sphere, Base::fs_cp,
                 Base::nonkahler_cp, Base::bk_sphere}) {
    if (to_string(b) == name) return b;
  }
  throw InvalidArgument("unknown base '" + std::string(name) + "'");
}

std::vector<LimitPair> candidate_limits(const SystemParams& params, bool mu_zero) {
  if (params.family() == Family::octonionic) {
    // round S^15 is not asserted as a base, see classify
    return {{Rational(1), Rational(1), Base::none}, {Rational(1), Rational(3, 11), Base::bk_sphere}};
  }
  const std::int64_t m = params.m();
  if (mu_zero) {
    return {{Rational(0), Rational(1), Base::fs_cp},
            {Rational(0), Rational(1, m + 1), Base::nonkahler_cp}};
  }
  return {{Rational(1), Rational(1), Base::standard_sphere},
          {Rational(1), Rational(1, 2 * m + 3), Base::jensen_sphere}};
}

std::vector<LimitPair> all_candidate_limits(const SystemParams& params) {
  auto out = candidate_limits(params, false);
  if (params.family() == Family::quaternionic) {
    auto z = candidate_limits(params, true);
    out.insert(out.end(), z.begin(), z.end());
  }
  return out;
}

ParaboloidCoefficients paraboloid_coefficients(const SystemParams& params, double mu_sq,
                                               double nu_sq, double C) {
  if (!(C < 0)) throw InvalidArgument("paraboloid coefficients need C < 0, got " + fmt(C));
  if (!std::isfinite(mu_sq) || !std::isfinite(nu_sq)) {
    throw InvalidArgument("paraboloid coefficients need finite mu^2, nu^2");
  }
  const double k = 1.0 / std::sqrt(-C);
  const double nu4 = nu_sq * nu_sq;
  ParaboloidCoefficients pc;
  if (params.family() == Family::octonionic) {
    pc.cb = k * (6 + 8 * nu4);
    pc.cc = k * (28 - 14 * nu_sq);
    pc.ca = pc.cb;
    return pc;
  }
  const double m = params.m();
  const double mu4 = mu_sq * mu_sq;
  pc.ca = k * (2 * mu4 + 4 * m * mu4 * nu4);
  pc.cb = k * (4 - 2 * mu_sq + 4 * m * nu4);
  pc.cc = k * ((4 * m + 8) - 2 * mu_sq * nu_sq - 4 * nu_sq);
  return pc;
}

double volume_growth_exponent(const SolitonProfile& profile) {
  const auto& S = profile.samples;
  if (S.size() < 5) throw InsufficientData("volume growth needs at least 5 samples");
  const double t_max = S.back().t;
  if (!(S.front().t <= t_max / 10)) {
    throw InsufficientData("profile spans less than a decade in t (" + fmt(S.front().t) + " .. " +
                           fmt(t_max) + ")");
  }
  const bool quat = profile.params.family() == Family::quaternionic;
  const double m = profile.params.m();
  std::vector<double> lt, lv;
  for (std::size_t i = lower_index(S, t_max / 10); i < S.size(); ++i) {
    const auto& s = S[i];
    lt.push_back(std::log(s.t));
    lv.push_back(quat ? std::log(s.a) + 2 * std::log(s.b) + 4 * m * std::log(s.c)
                      : 7 * std::log(s.b) + 8 * std::log(s.c));
  }
  if (lt.size() < 5) throw InsufficientData("fewer than 5 samples on the last decade");
  return fit_line(lt, lv).slope;
}

AsymptoticReport classify(const SystemParams& params, const ShootSpec& spec,
                          const Trajectory& trajectory, const SolitonProfile& profile,
                          const ClassifyOptions& opt) {
  AsymptoticReport r;
  r.gauge = std::string(to_string(profile.gauge));
  r.C = profile.C;
  const auto& T = trajectory.samples;
  const auto& S = profile.samples;
  if (T.empty() || S.size() < 2) throw InsufficientData("classify needs a non-empty run");
  if (spec.s.empty()) throw InvalidArgument("classify needs the shoot vector");

  const bool quat = params.family() == Family::quaternionic;
  const bool steady = params.epsilon() == 0;
  const double s2 = quat ? spec.s[1] : 0.0;
  const double s4 = spec.s.back();

  const Sample& last = T.back();
  r.Q_final = last.scalars.Q;
  r.fdot_final = S.back().fdot;
  const double W = last.state.get(Var::W);
  r.W_eta_final = W * last.eta;
  for (Var v : {Var::X1, Var::X2, Var::X3}) {
    if (params.index(v) < 0) continue;
    r.X_over_W_final.push_back(W > 0 ? last.state.get(v) / W : 0.0);
  }
  r.y1_final = quat ? last.state.get(Var::Y1) : 1.0;
  r.mu_sq = r.y1_final * r.y1_final;

  std::vector<double> nu;
  nu.reserve(T.size());
  for (const auto& s : T) {
    const double y2 = s.state.get(Var::Y2);
    nu.push_back(y2 > 0 ? s.state.get(Var::Y3) / y2 : 0.0);
  }
  r.nu_sq = nu.back();
  r.nu_sq_extrapolated = extrapolate(nu);

  try {
    r.volume_exponent = volume_growth_exponent(profile);
  } catch (const InsufficientData& e) {
    r.notes.push_back(std::string("volume exponent: ") + e.what());
  }

  const double t_max = S.back().t;
  {
    const std::size_t i9 = std::min(lower_index(S, 0.9 * t_max), S.size() - 1);
    r.cigar_radius = S.back().a;
    r.a_tail_cauchy = std::abs(S.back().a - S[i9].a) / S.back().a;
  }
  {
    const std::size_t ih = lower_index(S, 0.5 * t_max);
    const std::size_t i9 = std::min(lower_index(S, 0.9 * t_max), S.size() - 1);
    const double q9[3] = {S[i9].a / S[i9].t, S[i9].b / S[i9].t, S[i9].c / S[i9].t};
    const double q[3] = {S.back().a / t_max, S.back().b / t_max, S.back().c / t_max};
    for (int k = 0; k < 3; ++k) {
      r.cone_slopes[k] = q[k];
      r.cone_variation[k] = std::abs(q[k] - q9[k]) / std::abs(q[k]);
    }
    std::vector<double> t, a2, b2, c2;
    for (std::size_t i = ih; i < S.size(); ++i) {
      t.push_back(S[i].t);
      a2.push_back(S[i].a * S[i].a);
      b2.push_back(S[i].b * S[i].b);
      c2.push_back(S[i].c * S[i].c);
    }
    if (t.size() >= 2) {
      r.measured = {fit_line(t, a2).slope, fit_line(t, b2).slope, fit_line(t, c2).slope};
    }
  }

  if (trajectory.terminal_reason == TerminalReason::left_region ||
      trajectory.terminal_reason == TerminalReason::blow_up) {
    r.failed_checks.push_back("run ended abnormally: " +
                              std::string(to_string(trajectory.terminal_reason)));
  }

  if (s4 == 0 && spec.einstein_subfamily) {
    r.classification = AsymptoticClass::einstein_subfamily;
    return r;
  }

  if (!steady) {
    for (std::size_t i = 0; i < r.X_over_W_final.size(); ++i) {
      if (!(std::abs(r.X_over_W_final[i] - 0.5) <= opt.expanding_x_tol)) {
        r.failed_checks.push_back("X/W component " + std::to_string(i) + " = " +
                                  fmt(r.X_over_W_final[i]) + ", expected 1/2 +- " +
                                  fmt(opt.expanding_x_tol));
      }
    }
    if (!(std::abs(r.W_eta_final - 1.0) <= opt.expanding_weta_tol)) {
      r.failed_checks.push_back("W*eta = " + fmt(r.W_eta_final) + ", expected 1 +- " +
                                fmt(opt.expanding_weta_tol));
    }
    for (int k = 0; k < 3; ++k) {
      if (!(r.cone_slopes[k] > 0)) r.failed_checks.push_back("non-positive cone slope");
    }
    r.classification =
        r.failed_checks.empty() ? AsymptoticClass::AC : AsymptoticClass::inconclusive;
    return r;
  }

  if (!(std::abs(r.Q_final + 1.0) <= opt.q_tol)) {
    r.failed_checks.push_back("Q_final = " + fmt(r.Q_final) + ", expected -1 +- " +
                              fmt(opt.q_tol));
  }
  if (quat) {
    if (s2 == 0 && !(std::abs(r.y1_final - 1.0) <= 1e-8)) {
      r.failed_checks.push_back("Y1 left 1 with s2 = 0: " + fmt(r.y1_final));
    }
    if (s2 > 0 && !(r.y1_final < 0.1)) {
      r.failed_checks.push_back("Y1 tail " + fmt(r.y1_final) + " not below 0.1 with s2 > 0");
    }
  }

  const bool mu_zero = quat && s2 > 0;
  const double mu_branch = mu_zero ? 0.0 : 1.0;
  double best = 1e300;
  for (const auto& c : candidate_limits(params, mu_zero)) {
    const double d = std::hypot(r.mu_sq - c.mu_sq.to_double(),
                                r.nu_sq_extrapolated - c.nu_sq.to_double());
    if (d < best) {
      best = d;
      r.snapped = c;
    }
  }
  r.snap_distance = best;
  {
    const double target = r.snapped->nu_sq.to_double();
    r.monotone_approach = true;
    double prev = std::abs(nu[nu.size() - nu.size() / 4] - target);
    for (std::size_t i = nu.size() - nu.size() / 4 + 1; i < nu.size(); ++i) {
      const double d = std::abs(nu[i] - target);
      if (d > prev + 1e-6) {
        r.monotone_approach = false;
        break;
      }
      prev = std::min(prev, d);
    }
  }
  if (!(best < opt.snap_radius)) {
    r.failed_checks.push_back("no candidate within " + fmt(opt.snap_radius) + " of (" +
                              fmt(r.mu_sq) + ", " + fmt(r.nu_sq_extrapolated) + ")");
  }
  if (!r.monotone_approach) r.failed_checks.push_back("nu^2 tail does not approach the snap");

  if (r.C < 0) {
    r.predicted = paraboloid_coefficients(params, r.snapped->mu_sq.to_double(),
                                          r.snapped->nu_sq.to_double(), r.C);
  } else {
    r.failed_checks.push_back("soliton constant C = " + fmt(r.C) + " is not negative");
  }

  if (!quat && r.snapped->base == Base::none) {
    r.notes.push_back("nu^2 -> 1 on the octonionic family: base not asserted");
  }

  if (!r.failed_checks.empty()) {
    r.classification = AsymptoticClass::inconclusive;
    return r;
  }
  r.classification = mu_branch == 1.0 ? AsymptoticClass::AP : AsymptoticClass::ACP;
  r.base = r.snapped->base;
  if (r.classification != AsymptoticClass::ACP) r.cigar_radius = 0;
  return r;
}

}  // namespace soliton
