#include "soliton/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "soliton/errors.hpp"
#include "soliton/finite_difference.hpp"

namespace soliton {

namespace {

using Vec = Eigen::VectorXd;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense output (Hairer & Wanner, DOPRI5 contd5)
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

// Augmented state: phase coordinates, then t, f, W~.
struct System {
  const SystemParams& params;
  std::size_t dim;
  std::size_t it, jf, jw;

  explicit System(const SystemParams& p)
      : params(p), dim(p.dim()), it(dim), jf(dim + 1), jw(dim + 2) {}

  PhaseState phase(const Vec& y) const {
    return PhaseState(params.family(), std::span<const double>(y.data(), dim));
  }

  void rhs(const Vec& y, Vec& dy) const {
    const PhaseState s = phase(y);
    const PhaseState v = vector_field(params, s);
    const DerivedScalars d = derived_scalars(params, s);
    for (std::size_t i = 0; i < dim; ++i) dy(static_cast<Eigen::Index>(i)) = v[i];
    const double w = s.get(Var::W);
    const double wt = y(static_cast<Eigen::Index>(jw));
    if (params.epsilon() == 1) {
      dy(static_cast<Eigen::Index>(it)) = std::sqrt(std::max(w, 0.0));
      dy(static_cast<Eigen::Index>(jw)) = 0.0;
    } else {
      dy(static_cast<Eigen::Index>(it)) = wt;
      dy(static_cast<Eigen::Index>(jw)) = d.G * wt;
    }
    dy(static_cast<Eigen::Index>(jf)) = d.H - 1.0;
  }

  Vec pack(const PhaseState& s, const ChannelInit& c) const {
    Vec y(static_cast<Eigen::Index>(dim + 3));
    for (std::size_t i = 0; i < dim; ++i) y(static_cast<Eigen::Index>(i)) = s[i];
    y(static_cast<Eigen::Index>(it)) = c.t;
    y(static_cast<Eigen::Index>(jf)) = c.f;
    y(static_cast<Eigen::Index>(jw)) = c.wtilde;
    return y;
  }

  Sample sample(double eta, const Vec& y) const {
    Sample s;
    s.eta = eta;
    s.state = phase(y);
    s.scalars = derived_scalars(params, s.state);
    s.t = y(static_cast<Eigen::Index>(it));
    s.f = y(static_cast<Eigen::Index>(jf));
    s.wtilde = y(static_cast<Eigen::Index>(jw));
    return s;
  }

  // |V| over every phase component except Y1
  double drift(const Vec& dy) const {
    const int y1 = params.index(Var::Y1);
    double acc = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      if (static_cast<int>(i) == y1) continue;
      acc += dy(static_cast<Eigen::Index>(i)) * dy(static_cast<Eigen::Index>(i));
    }
    return std::sqrt(acc);
  }
};

class Monitor {
 public:
  Monitor(const SystemParams& p, const IntegratorConfig& cfg, std::vector<InvariantSet> sets,
          bool einstein)
      : params_(p), cfg_(cfg), sets_(std::move(sets)), einstein_(einstein) {}

  // Returns false if the run must stop (left the region).
  bool check(const Sample& s, Trajectory& tr) {
    bool keep_going = true;
    for (std::size_t k = 0; k < sets_.size(); ++k) {
      const InvariantSet set = sets_[k];
      const auto margins = membership(params_, s.state, set);
      for (std::size_t i = 0; i < margins.size(); ++i) {
        const Margin& mg = margins[i];
        if (mg.equality) {
          worst_eq_[set] = std::max(worst_eq_[set], mg.value);
          if (mg.value > cfg_.record_tol) record(tr, EventKind::constraint_violation, s.eta, set, i, mg);
        } else {
          auto it = worst_.find(set);
          if (it == worst_.end()) worst_[set] = mg.value;
          else it->second = std::min(it->second, mg.value);
          if (mg.value < -cfg_.record_tol) {
            record(tr, EventKind::constraint_violation, s.eta, set, i, mg);
            // on the Einstein subfamily Q = 0 and H = 1 are equalities watched as drift
            const bool drift_only = einstein_ && (mg.label == "-Q" || mg.label == "1-H");
            if (mg.value < -cfg_.abort_tol && cfg_.abort_on_violation && !drift_only) {
              keep_going = false;
            }
          }
        }
      }
    }
    if (einstein_) {
      const double drift = std::max(std::abs(s.scalars.Q), std::abs(s.scalars.H - 1.0));
      if (drift > cfg_.record_tol && !einstein_recorded_) {
        einstein_recorded_ = true;
        tr.events.push_back({EventKind::einstein_drift, s.eta, InvariantSet::RS_Einstein, -1,
                             "max(|Q|,|H-1|)", drift});
      }
      if (drift > cfg_.abort_tol) {
        stop_ = TerminalReason::einstein_drift_limit;
        return false;
      }
    }
    if (!keep_going) stop_ = TerminalReason::left_region;
    return keep_going;
  }

  TerminalReason stop_reason() const { return stop_; }

  void finish(Trajectory& tr) const {
    for (const auto& [set, v] : worst_) tr.worst_margin.emplace_back(set, v);
    for (const auto& [set, v] : worst_eq_) tr.worst_equality.emplace_back(set, v);
  }

 private:
  void record(Trajectory& tr, EventKind kind, double eta, InvariantSet set, std::size_t index,
              const Margin& mg) {
    if (!seen_.insert({set, index}).second) return;
    tr.events.push_back({kind, eta, set, static_cast<int>(index), mg.label, mg.value});
  }

  const SystemParams& params_;
  const IntegratorConfig& cfg_;
  std::vector<InvariantSet> sets_;
  bool einstein_;
  bool einstein_recorded_ = false;
  TerminalReason stop_ = TerminalReason::left_region;
  std::set<std::pair<InvariantSet, std::size_t>> seen_;
  std::map<InvariantSet, double> worst_;
  std::map<InvariantSet, double> worst_eq_;
};

bool finite(const Vec& v) { return v.allFinite(); }

}  // namespace

void IntegratorConfig::validate() const {
  if (!(rtol > 0) || !(atol > 0)) throw InvalidArgument("rtol and atol must be positive");
  if (eta_max && !(*eta_max > 0)) throw InvalidArgument("eta_max must be positive");
  if (!(max_step > 0) || !(initial_step > 0)) throw InvalidArgument("step sizes must be positive");
  if (!(sample_stride > 0) || sample_rel_stride < 0)
    throw InvalidArgument("sample stride must be positive");
  if (!(convergence_eps >= 0)) throw InvalidArgument("convergence_eps must be non-negative");
  if (!(record_tol >= 0) || !(abort_tol >= record_tol))
    throw InvalidArgument("need 0 <= record_tol <= abort_tol");
}

double default_eta_max(const SystemParams& params) {
  return 1000.0 * params.n();
}

ChannelInit channels_from_seed(const SystemParams& params, const PhaseState& seed, int d_S) {
  if (d_S <= 0) throw InvalidArgument("collapsing sphere dimension must be positive");
  const double lambda = 2.0 / d_S;
  const DerivedScalars d = derived_scalars(params, seed);
  ChannelInit c;
  c.wtilde = 1.0;
  c.f = (d.H - 1.0) / lambda;
  c.t = params.epsilon() == 0 ? d_S * c.wtilde : d_S * std::sqrt(std::max(seed.get(Var::W), 0.0));
  return c;
}

std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::constraint_violation: return "constraint_violation";
    case EventKind::einstein_drift: return "einstein_drift";
    case EventKind::non_finite: return "non_finite";
  }
  return "?";
}

std::string_view to_string(TerminalReason r) {
  switch (r) {
    case TerminalReason::converged: return "converged";
    case TerminalReason::eta_max_reached: return "eta_max_reached";
    case TerminalReason::left_region: return "left_region";
    case TerminalReason::einstein_drift_limit: return "einstein_drift_limit";
    case TerminalReason::blow_up: return "blow_up";
  }
  return "?";
}

Trajectory integrate(const SystemParams& params, const PhaseState& seed, const ChannelInit& init,
                     const IntegratorConfig& config, const std::vector<InvariantSet>& monitor_sets,
                     bool track_einstein) {
  config.validate();
  if (seed.family() != params.family()) throw InvalidArgument("seed layout does not match family");
  if (!seed.all_finite()) throw InvalidArgument("seed has non-finite components");

  const System sys(params);
  const double eta_end = config.eta_max.value_or(default_eta_max(params));
  Trajectory tr(params);
  Monitor mon(params, config, monitor_sets, track_einstein);

  const auto n = static_cast<Eigen::Index>(sys.dim + 3);
  Vec y = sys.pack(seed, init);
  Vec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), yt(n), ynew(n), err(n);
  sys.rhs(y, k1);

  double x = 0.0;
  double next_sample = 0.0;
  auto advance_sample = [&](double at) {
    return at + std::max(config.sample_stride, config.sample_rel_stride * at);
  };
  auto push = [&](const Sample& s) {
    tr.samples.push_back(s);
    return mon.check(s, tr);
  };

  if (!push(sys.sample(0.0, y))) {
    tr.terminal_reason = mon.stop_reason();
    mon.finish(tr);
    return tr;
  }
  next_sample = advance_sample(0.0);
  if (sys.drift(k1) < config.convergence_eps) {
    tr.terminal_reason = TerminalReason::converged;
    tr.limit_state = sys.phase(y);
    mon.finish(tr);
    return tr;
  }

  double h = std::min(config.initial_step, config.max_step);
  int non_finite_streak = 0;
  while (true) {
    if (tr.accepted_steps + tr.rejected_steps >= config.max_steps) {
      throw StepSizeUnderflow("step budget exhausted at eta = " + std::to_string(x));
    }
    h = std::min(h, eta_end - x);
    if (h < 1e-14 * std::max(1.0, std::abs(x))) {
      throw StepSizeUnderflow("step size underflow at eta = " + std::to_string(x) +
                              " (h = " + std::to_string(h) + ")");
    }

    yt = y + h * a21 * k1;
    sys.rhs(yt, k2);
    yt = y + h * (a31 * k1 + a32 * k2);
    sys.rhs(yt, k3);
    yt = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    sys.rhs(yt, k4);
    yt = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    sys.rhs(yt, k5);
    yt = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    sys.rhs(yt, k6);
    ynew = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);

    if (!finite(ynew)) {
      ++tr.rejected_steps;
      if (++non_finite_streak > 40) {
        tr.events.push_back({EventKind::non_finite, x, InvariantSet::RS, -1, "state", kNaN});
        tr.terminal_reason = TerminalReason::blow_up;
        break;
      }
      h *= 0.2;
      continue;
    }
    non_finite_streak = 0;
    sys.rhs(ynew, k7);
    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double acc = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double sc = config.atol + config.rtol * std::max(std::abs(y(i)), std::abs(ynew(i)));
      acc += (err(i) / sc) * (err(i) / sc);
    }
    const double enorm = std::sqrt(acc / static_cast<double>(n));
    if (!std::isfinite(enorm) || enorm > 1.0) {
      ++tr.rejected_steps;
      const double fac = std::isfinite(enorm) ? std::max(0.2, 0.9 * std::pow(enorm, -0.2)) : 0.2;
      h *= fac;
      continue;
    }

    // accepted: dense output on [x, x + h]
    ++tr.accepted_steps;
    const double x1 = (eta_end - x - h <= 1e-12 * std::max(1.0, eta_end)) ? eta_end : x + h;
    const Vec ydiff = ynew - y;
    const Vec bspl = h * k1 - ydiff;
    const Vec r4 = ydiff - h * k7 - bspl;
    const Vec r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);

    bool keep_going = true;
    while (keep_going && next_sample < x1) {
      const double th = (next_sample - x) / h;
      const double th1 = 1.0 - th;
      const Vec yi = y + th * (ydiff + th1 * (bspl + th * (r4 + th1 * r5)));
      keep_going = push(sys.sample(next_sample, yi));
      next_sample = advance_sample(next_sample);
    }

    y = ynew;
    k1 = k7;
    x = x1;
    if (!keep_going) {
      tr.terminal_reason = mon.stop_reason();
      break;
    }
    if (x >= eta_end) {
      push(sys.sample(x, y));
      tr.terminal_reason = TerminalReason::eta_max_reached;
      break;
    }
    if (sys.drift(k1) < config.convergence_eps) {
      push(sys.sample(x, y));
      tr.terminal_reason = TerminalReason::converged;
      tr.limit_state = sys.phase(y);
      break;
    }

    const double fac = enorm == 0 ? 10.0 : std::clamp(0.9 * std::pow(enorm, -0.2), 0.2, 10.0);
    h = std::min(h * fac, config.max_step);
  }
  mon.finish(tr);
  return tr;
}

Trajectory rk4_reference(const SystemParams& params, const PhaseState& seed,
                         const ChannelInit& init, double h, std::size_t n_steps,
                         std::size_t record_every) {
  if (!(h > 0) || !std::isfinite(h)) throw InvalidArgument("rk4_reference: h must be positive");
  if (record_every == 0) throw InvalidArgument("rk4_reference: record_every must be positive");
  if (seed.family() != params.family()) throw InvalidArgument("seed layout does not match family");
  if (!seed.all_finite()) throw InvalidArgument("seed has non-finite components");

  const System sys(params);
  Trajectory tr(params);
  const auto n = static_cast<Eigen::Index>(sys.dim + 3);
  Vec y = sys.pack(seed, init), k1(n), k2(n), k3(n), k4(n);
  tr.samples.push_back(sys.sample(0.0, y));
  for (std::size_t i = 1; i <= n_steps; ++i) {
    sys.rhs(y, k1);
    sys.rhs(y + 0.5 * h * k1, k2);
    sys.rhs(y + 0.5 * h * k2, k3);
    sys.rhs(y + h * k3, k4);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!finite(y)) {
      tr.events.push_back({EventKind::non_finite, static_cast<double>(i) * h, InvariantSet::RS,
                           -1, "state", kNaN});
      tr.terminal_reason = TerminalReason::blow_up;
      return tr;
    }
    if (i % record_every == 0 || i == n_steps) {
      tr.samples.push_back(sys.sample(static_cast<double>(i) * h, y));
    }
  }
  tr.terminal_reason = TerminalReason::eta_max_reached;
  return tr;
}

double conserved_quantity(const SystemParams& params, const Sample& s) {
  if (params.epsilon() == 0) return s.scalars.Q / (s.wtilde * s.wtilde);
  return s.scalars.Q / s.state.get(Var::W) - s.f;
}

DiagnosticSeries monitor(const Trajectory& trajectory, int stencil) {
  DiagnosticSeries out;
  const auto& samples = trajectory.samples;
  if (samples.empty()) return out;
  const SystemParams& p = trajectory.params;
  const double eps = p.eps();
  const bool quat = p.family() == Family::quaternionic;
  const std::size_t n = samples.size();

  for (const auto& s : samples) {
    out.eta.push_back(s.eta);
    out.Q.push_back(s.scalars.Q);
    out.H.push_back(s.scalars.H);
    out.G.push_back(s.scalars.G);
    out.conserved.push_back(conserved_quantity(p, s));
    out.Y1.push_back(quat ? s.state.get(Var::Y1) : 1.0);

    const double x2 = s.state.get(Var::X2), x3 = s.state.get(Var::X3);
    out.ratio.push_back((x2 / x3) * (s.scalars.Rt3 / s.scalars.Rt2));

    const double y2 = s.state.get(Var::Y2), y3 = s.state.get(Var::Y3);
    const double lam = p.epsilon() == 1 ? std::sqrt(s.state.get(Var::W)) : s.wtilde;
    if (y2 > 0 && y3 > 0 && lam > 0) {
      const double lb = std::log(lam / y2);
      const double lc = std::log(lam / std::sqrt(y2 * y3));
      double lv;
      if (quat) {
        lv = std::log(s.state.get(Var::Y1) * lam / y2) + 2 * lb + 4.0 * p.m() * lc;
      } else {
        lv = 7 * lb + 8 * lc;
      }
      const double shape = s.scalars.Rs + s.scalars.G - s.scalars.H * s.scalars.H / p.n();
      out.bohm.push_back(std::exp(2.0 * lv / p.n() - 2.0 * std::log(lam)) * shape);
    } else {
      out.bohm.push_back(kNaN);
    }
  }

  out.q_identity_residual.assign(n, kNaN);
  if (n >= static_cast<std::size_t>(stencil)) {
    const auto dq = central_derivatives(out.eta, out.Q, stencil);
    for (std::size_t i = 0; i < n; ++i) {
      if (std::isnan(dq.d1[i])) continue;
      const auto& s = samples[i];
      const double w = s.state.get(Var::W);
      const double rhs = 2.0 * s.scalars.Q * (s.scalars.G - 0.5 * eps * w) +
                         eps * (s.scalars.H - 1.0) * w;
      out.q_identity_residual[i] = std::abs(dq.d1[i] - rhs);
      out.max_q_identity_residual = std::max(out.max_q_identity_residual, out.q_identity_residual[i]);
    }
  }

  const auto [lo, hi] = std::minmax_element(out.conserved.begin(), out.conserved.end());
  double scale = 0;
  for (double c : out.conserved) scale = std::max(scale, std::abs(c));
  out.conserved_rel_spread = scale > 0 ? (*hi - *lo) / scale : 0.0;

  for (std::size_t i = 1; i < n; ++i) {
    out.y1_max_increase = std::max(out.y1_max_increase, out.Y1[i] - out.Y1[i - 1]);
  }
  return out;
}

}  // namespace soliton
