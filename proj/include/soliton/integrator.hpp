#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "soliton/phase_system.hpp"

namespace soliton {

struct IntegratorConfig {
  double rtol = 1e-12;
  double atol = 1e-20;
  /// Unset means default_eta_max(params).
  std::optional<double> eta_max;
  double max_step = 10.0;
  double initial_step = 1e-3;
  /// Output spacing in eta is max(sample_stride, sample_rel_stride * eta).
  double sample_stride = 0.01;
  double sample_rel_stride = 1e-3;
  /// Stop once |V| restricted to the non-Y1 components drops below this.
  double convergence_eps = 1e-9;
  /// Inequality margins below -record_tol are recorded, below -abort_tol the run stops.
  double record_tol = 1e-8;
  double abort_tol = 1e-6;
  bool abort_on_violation = true;
  std::size_t max_steps = 5'000'000;

  void validate() const;
};

/// Integration horizon used when the config leaves eta_max unset.
double default_eta_max(const SystemParams& params);

/// Initial values of the quadrature channels riding along with the state.
struct ChannelInit {
  double t = 0;
  double f = 0;
  double wtilde = 1;
};

/// Channel values consistent with the linearised flow out of a critical point
/// whose collapsing sphere has dimension d_S.
ChannelInit channels_from_seed(const SystemParams& params, const PhaseState& seed, int d_S);

enum class EventKind { constraint_violation, einstein_drift, non_finite };
std::string_view to_string(EventKind k);

struct EventRecord {
  EventKind kind;
  double eta = 0;
  InvariantSet set = InvariantSet::RS;
  int index = -1;  ///< constraint position within the set
  std::string label;
  double margin = 0;
};

/// einstein_drift_limit: an Einstein-subfamily run stopped once max(|Q|, |H-1|)
/// passed abort_tol, the point past which it no longer follows an Einstein metric.
enum class TerminalReason { converged, eta_max_reached, left_region, blow_up, einstein_drift_limit };
std::string_view to_string(TerminalReason r);

struct Sample {
  double eta = 0;
  PhaseState state;
  DerivedScalars scalars;
  double t = 0;
  double f = 0;
  double wtilde = 1;
};

struct Trajectory {
  explicit Trajectory(const SystemParams& p) : params(p) {}

  SystemParams params;
  std::vector<Sample> samples;
  std::vector<EventRecord> events;
  TerminalReason terminal_reason = TerminalReason::eta_max_reached;
  std::optional<PhaseState> limit_state;
  /// Worst (most negative) inequality margin seen per monitored set.
  std::vector<std::pair<InvariantSet, double>> worst_margin;
  /// Largest equality residual seen per monitored set (sets without equalities omitted).
  std::vector<std::pair<InvariantSet, double>> worst_equality;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
};

/// Adaptive Dormand-Prince 5(4) with dense output. Samples are taken on the
/// configured stride; monitor_sets are checked at every sample.
Trajectory integrate(const SystemParams& params, const PhaseState& seed, const ChannelInit& init,
                     const IntegratorConfig& config,
                     const std::vector<InvariantSet>& monitor_sets = {},
                     bool track_einstein = false);

/// Classical fixed-step RK4 of the same augmented system; records every
/// record_every-th step. Stops early (keeping what it has) on non-finite state.
Trajectory rk4_reference(const SystemParams& params, const PhaseState& seed,
                         const ChannelInit& init, double h, std::size_t n_steps,
                         std::size_t record_every = 1);

struct DiagnosticSeries {
  std::vector<double> eta;
  std::vector<double> Q, H, G;
  /// dQ/deta by finite differences minus 2Q(G - eps W/2) + eps(H-1)W; NaN at the ends.
  std::vector<double> q_identity_residual;
  std::vector<double> conserved;
  std::vector<double> bohm;
  std::vector<double> ratio;
  std::vector<double> Y1;

  double max_q_identity_residual = 0;
  double conserved_rel_spread = 0;
  /// Largest per-sample increase of Y1 (0 if non-increasing).
  double y1_max_increase = 0;
};

/// Per-sample diagnostics. stencil is the finite-difference stencil width (3 or 5).
DiagnosticSeries monitor(const Trajectory& trajectory, int stencil = 5);

/// Q/W~^2 (steady) or Q/W - f (expanding) at one sample.
double conserved_quantity(const SystemParams& params, const Sample& s);

}  // namespace soliton
