#include "soliton/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

#include "soliton/errors.hpp"
#include "soliton/finite_difference.hpp"

namespace soliton {

namespace {

double relative(std::initializer_list<double> terms, double floor = 0) {
  double sum = 0, scale = floor;
  for (double t : terms) {
    sum += t;
    scale = std::max(scale, std::abs(t));
  }
  return scale > 0 ? std::abs(sum) / scale : 0.0;
}

double median(std::vector<double> v) {
  if (v.empty()) throw InsufficientData("median of an empty series");
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  const double hi = *mid;
  const double lo = *std::max_element(v.begin(), mid);
  return 0.5 * (lo + hi);
}

}  // namespace

std::string_view to_string(Gauge g) { return g == Gauge::raw ? "raw" : "normalize_C"; }

Gauge gauge_from_string(std::string_view name) {
  if (name == "raw") return Gauge::raw;
  if (name == "normalize_C") return Gauge::normalize_C;
  throw InvalidArgument("unknown gauge '" + std::string(name) + "' (expected raw or normalize_C)");
}

double soliton_constant(const Trajectory& trajectory) {
  const auto& s = trajectory.samples;
  if (s.empty()) throw InsufficientData("soliton constant of an empty trajectory");
  std::vector<double> tail;
  for (std::size_t i = s.size() / 2; i < s.size(); ++i) {
    tail.push_back(conserved_quantity(trajectory.params, s[i]));
  }
  return median(std::move(tail));
}

SolitonProfile reconstruct(const Trajectory& trajectory, Gauge gauge, int d_S) {
  const SystemParams& p = trajectory.params;
  SolitonProfile prof(p);
  prof.d_S = d_S;
  prof.gauge = gauge;
  if (trajectory.samples.size() < 2) {
    throw ReconstructionDomainError("trajectory has fewer than two samples");
  }
  const bool quat = p.family() == Family::quaternionic;
  const bool steady = p.epsilon() == 0;

  for (const auto& s : trajectory.samples) {
    const double y2 = s.state.get(Var::Y2), y3 = s.state.get(Var::Y3);
    if (y3 < 1e-14) continue;
    if (!(y2 > 0)) {
      throw ReconstructionDomainError("Y2 = " + std::to_string(y2) + " at eta = " +
                                      std::to_string(s.eta));
    }
    const double lam = steady ? s.wtilde : std::sqrt(std::max(s.state.get(Var::W), 0.0));
    ProfileSample ps;
    ps.t = s.t;
    ps.b = lam / y2;
    ps.a = quat ? s.state.get(Var::Y1) * ps.b : ps.b;
    ps.c = std::sqrt(lam * lam / (y2 * y3));
    ps.f = s.f;
    ps.fdot = lam > 0 ? (s.scalars.H - 1.0) / lam : 0.0;
    if (!(ps.a > 0 && ps.b > 0 && ps.c > 0)) {
      throw ReconstructionDomainError("non-positive metric component at eta = " +
                                      std::to_string(s.eta));
    }
    if (!prof.samples.empty() && !(ps.t > prof.samples.back().t)) {
      throw ReconstructionDomainError("t does not increase at eta = " + std::to_string(s.eta));
    }
    prof.samples.push_back(ps);
    prof.eta.push_back(s.eta);
  }
  if (prof.samples.size() < 2) {
    throw ReconstructionDomainError("no samples with Y3 > 0 to reconstruct from");
  }

  prof.C = soliton_constant(trajectory);
  if (gauge == Gauge::normalize_C) {
    if (!steady) throw InvalidArgument("normalize_C gauge is only defined for steady solitons");
    if (!(prof.C < 0)) {
      throw InvalidArgument("normalize_C needs C < 0, got C = " + std::to_string(prof.C));
    }
    const double lam = std::sqrt(-prof.C);
    for (auto& ps : prof.samples) {
      ps.t *= lam;
      ps.a *= lam;
      ps.b *= lam;
      ps.c *= lam;
      ps.fdot /= lam;
    }
    prof.scale = lam;
    prof.C = -1.0;
  }
  return prof;
}

ResidualSeries soliton_residual(const SolitonProfile& profile, const ResidualOptions& opt) {
  double abs_spacing = opt.abs_spacing;
  if (abs_spacing <= 0) {
    const bool steady = profile.params.epsilon() == 0;
    const double t_first = profile.samples.empty() ? 1.0 : profile.samples.front().t;
    if (!steady) {
      abs_spacing = 0.02;
    } else if (-profile.C * t_first * t_first > 1e-12) {
      abs_spacing = 0.02 / std::sqrt(-profile.C);
    } else {
      // Ricci-flat: no intrinsic length, use the size at the first sample.
      abs_spacing = opt.rel_spacing * t_first;
    }
  }
  std::vector<ProfileSample> S;
  for (const auto& s : profile.samples) {
    if (S.empty()) {
      S.push_back(s);
      continue;
    }
    const double t0 = S.back().t;
    if (s.t - t0 >= std::min(opt.rel_spacing * t0, abs_spacing + opt.tail_rel_spacing * t0)) {
      S.push_back(s);
    }
  }
  const int stencil = opt.stencil;
  if (S.size() < static_cast<std::size_t>(stencil) + 2) {
    throw InsufficientData("soliton_residual needs more samples than the stencil width");
  }
  const SystemParams& p = profile.params;
  const bool quat = p.family() == Family::quaternionic;
  const double eps = p.eps();
  const double m = p.m();
  const double C = profile.C;

  std::vector<double> t, la, lb, lc, f;
  for (const auto& s : S) {
    t.push_back(s.t);
    la.push_back(s.a);
    lb.push_back(s.b);
    lc.push_back(s.c);
    f.push_back(s.f);
  }
  const auto da = central_derivatives(t, la, stencil);
  const auto db = central_derivatives(t, lb, stencil);
  const auto dc = central_derivatives(t, lc, stencil);
  const auto df = central_derivatives(t, f, stencil);

  ResidualSeries out;
  for (std::size_t i = 0; i < S.size(); ++i) {
    if (std::isnan(db.d1[i])) continue;
    const double a = S[i].a, b = S[i].b, c = S[i].c;
    const double ra = da.d1[i] / a, rb = db.d1[i] / b, rc = dc.d1[i] / c;
    const double aa = da.d2[i] / a, bb = db.d2[i] / b, cc = dc.d2[i] / c;
    const double fd = df.d1[i], fdd = df.d2[i];
    const double a2 = a * a, b2 = b * b, b4 = b2 * b2, c2 = c * c, c4 = c2 * c2;

    std::vector<double> eq;
    double trL;
    if (quat) {
      trL = ra + 2 * rb + 4 * m * rc;
      eq.push_back(relative({aa, -ra * ra, trL * ra, -2 * a2 / b4, -4 * m * a2 / c4, -fd * ra,
                             -eps / 2}));
      eq.push_back(relative({bb, -rb * rb, trL * rb, -4 / b2, 2 * a2 / b4, -4 * m * b2 / c4,
                             -fd * rb, -eps / 2}));
      eq.push_back(relative({cc, -rc * rc, trL * rc, -(4 * m + 8) / c2, 2 * a2 / c4,
                             4 * b2 / c4, -fd * rc, -eps / 2}));
      // the second derivatives all vanish on a cone, so measure against (a'/a)^2
      eq.push_back(relative({fdd, eps / 2, -aa, -2 * bb, -4 * m * cc},
                            std::max({ra * ra, rb * rb, rc * rc})));
    } else {
      trL = 7 * rb + 8 * rc;
      eq.push_back(relative({bb, -rb * rb, trL * rb, -6 / b2, -8 * b2 / c4, -fd * rb, -eps / 2}));
      eq.push_back(relative({cc, -rc * rc, trL * rc, -28 / c2, 14 * b2 / c4, -fd * rc, -eps / 2}));
      eq.push_back(relative({fdd, eps / 2, -7 * bb, -8 * cc}, std::max(rb * rb, rc * rc)));
    }
    const double pot = relative({fdd, trL * fd, -fd * fd, -eps * S[i].f, -C});

    for (double e : eq) out.max_equation = std::max(out.max_equation, e);
    out.max_potential = std::max(out.max_potential, pot);
    out.t.push_back(t[i]);
    out.equations.push_back(std::move(eq));
    out.potential.push_back(pot);
  }
  return out;
}

RegularityReport initial_regularity(const SolitonProfile& profile, bool full_collapse) {
  const auto& S = profile.samples;
  if (S.size() < 5) throw InsufficientData("initial_regularity needs at least 5 samples");
  RegularityReport r;
  r.full_collapse = full_collapse;

  // seed region: t within a factor 10 of the first sample
  const double t_lim = 10.0 * S.front().t;
  std::vector<double> t, a, b, c, f, fd;
  for (const auto& s : S) {
    if (s.t > t_lim && t.size() >= 5) break;
    t.push_back(s.t);
    a.push_back(s.a);
    b.push_back(s.b);
    c.push_back(s.c);
    f.push_back(s.f);
    fd.push_back(s.fdot);
  }
  r.samples_used = t.size();
  const auto fa = fit_polynomial(t, a, 2);
  const auto fb = fit_polynomial(t, b, 2);
  const auto fc = fit_polynomial(t, c, 2);
  const auto ff = fit_polynomial(t, f, 2);
  const auto ffd = fit_line(t, fd);
  r.a_slope = fa[1];
  r.b_slope = fb[1];
  r.c_slope = fc[1];
  r.c0 = fc[0];
  r.f0 = ff[0];
  r.fdot0 = ffd.intercept;
  r.fddot0 = ffd.slope;
  if (profile.d_S > 0) {
    r.fddot0_expected = profile.C / (profile.d_S + 1);
    r.fddot0_rel_error = r.fddot0_expected != 0
                             ? std::abs(r.fddot0 - r.fddot0_expected) / std::abs(r.fddot0_expected)
                             : std::abs(r.fddot0);
  }
  return r;
}

}  // namespace soliton
