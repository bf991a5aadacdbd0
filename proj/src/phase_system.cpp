#include "soliton/phase_system.hpp"

#include <algorithm>
#include <cmath>

#include "soliton/errors.hpp"

namespace soliton {

namespace {

constexpr std::array<std::size_t, 5> kOctonionicSlots = {detail::kX2, detail::kX3, detail::kY2,
                                                         detail::kY3, detail::kW};

std::size_t full_slot(Family f, std::size_t i) {
  return f == Family::quaternionic ? i : kOctonionicSlots[i];
}

void require_layout(const SystemParams& params, const PhaseState& s) {
  if (s.family() != params.family()) {
    throw InvalidArgument("phase state layout (" + std::string(to_string(s.family())) +
                          ") does not match system family (" +
                          std::string(to_string(params.family())) + ")");
  }
}

void require_finite(const PhaseState& s) {
  if (!s.all_finite()) throw InvalidArgument("phase state has non-finite components");
}

template <class T>
detail::Full<T> expand(Family f, std::span<const T> v) {
  detail::Full<T> full;
  full.fill(T(0));
  if (f == Family::octonionic) full[detail::kY1] = T(1);
  for (std::size_t i = 0; i < v.size(); ++i) full[full_slot(f, i)] = v[i];
  return full;
}

detail::Full<double> expand(const PhaseState& s) {
  return expand<double>(s.family(), s.values());
}

}  // namespace

std::string_view to_string(Family f) {
  return f == Family::quaternionic ? "quaternionic" : "octonionic";
}

SystemParams::SystemParams(Family f, int m, int epsilon)
    : family_(f),
      m_(m),
      epsilon_(epsilon),
      coeffs_(f == Family::quaternionic ? detail::quaternionic_coefficients(m)
                                        : detail::octonionic_coefficients()) {}

SystemParams SystemParams::quaternionic(int m, int epsilon) {
  if (m < 1) throw InvalidArgument("quaternionic family needs m >= 1, got " + std::to_string(m));
  if (epsilon != 0 && epsilon != 1)
    throw InvalidArgument("epsilon must be 0 or 1, got " + std::to_string(epsilon));
  return SystemParams(Family::quaternionic, m, epsilon);
}

SystemParams SystemParams::octonionic(int epsilon) {
  if (epsilon != 0 && epsilon != 1)
    throw InvalidArgument("epsilon must be 0 or 1, got " + std::to_string(epsilon));
  return SystemParams(Family::octonionic, 0, epsilon);
}

SystemParams SystemParams::with_epsilon(int epsilon) const {
  return family_ == Family::quaternionic ? quaternionic(m_, epsilon) : octonionic(epsilon);
}

std::vector<int> SystemParams::multiplicities() const {
  if (family_ == Family::quaternionic) return {1, 2, 4 * m_};
  return {7, 8};
}

int SystemParams::index(Var v) const {
  const auto slot = static_cast<std::size_t>(v);
  if (family_ == Family::quaternionic) return static_cast<int>(slot);
  for (std::size_t i = 0; i < kOctonionicSlots.size(); ++i)
    if (kOctonionicSlots[i] == slot) return static_cast<int>(i);
  return -1;
}

// ---------------------------------------------------------------------------

PhaseState::PhaseState(Family f, std::initializer_list<double> values)
    : PhaseState(f, std::span<const double>(values.begin(), values.size())) {}

PhaseState::PhaseState(Family f, std::span<const double> values) : family_(f) {
  if (values.size() != dim()) {
    throw InvalidArgument(std::string(to_string(f)) + " state needs " + std::to_string(dim()) +
                          " components, got " + std::to_string(values.size()));
  }
  std::copy(values.begin(), values.end(), v_.begin());
}

double PhaseState::get(Var v) const {
  const auto slot = static_cast<std::size_t>(v);
  if (family_ == Family::quaternionic) return v_[slot];
  for (std::size_t i = 0; i < kOctonionicSlots.size(); ++i)
    if (kOctonionicSlots[i] == slot) return v_[i];
  throw InvalidArgument("octonionic states have no X1/Y1 component");
}

void PhaseState::set(Var v, double value) {
  const auto slot = static_cast<std::size_t>(v);
  if (family_ == Family::quaternionic) {
    v_[slot] = value;
    return;
  }
  for (std::size_t i = 0; i < kOctonionicSlots.size(); ++i) {
    if (kOctonionicSlots[i] == slot) {
      v_[i] = value;
      return;
    }
  }
  throw InvalidArgument("octonionic states have no X1/Y1 component");
}

Eigen::VectorXd PhaseState::to_vector() const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(dim()));
  for (std::size_t i = 0; i < dim(); ++i) out(static_cast<Eigen::Index>(i)) = v_[i];
  return out;
}

PhaseState PhaseState::from_vector(Family f, const Eigen::VectorXd& v) {
  return PhaseState(f, std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
}

bool PhaseState::all_finite() const {
  return std::all_of(v_.begin(), v_.begin() + static_cast<std::ptrdiff_t>(dim()),
                     [](double x) { return std::isfinite(x); });
}

// ---------------------------------------------------------------------------

DerivedScalars derived_scalars(const SystemParams& params, const PhaseState& s) {
  require_layout(params, s);
  const auto sc = detail::eval_scalars(params.coefficients(), params.epsilon(), expand(s));
  return {sc.R1, sc.R2, sc.R3, sc.Rs, sc.H, sc.G, sc.Q, sc.Rt2, sc.Rt3};
}

PhaseState vector_field(const SystemParams& params, const PhaseState& s) {
  require_layout(params, s);
  require_finite(s);
  const auto v = detail::eval_field(params.coefficients(), params.epsilon(), expand(s));
  PhaseState out(s.family());
  for (std::size_t i = 0; i < s.dim(); ++i) out[i] = v[full_slot(s.family(), i)];
  return out;
}

Eigen::MatrixXd jacobian(const SystemParams& params, const PhaseState& s) {
  require_layout(params, s);
  require_finite(s);
  const auto J = detail::eval_jacobian(params.coefficients(), params.epsilon(), expand(s));
  const auto n = static_cast<Eigen::Index>(s.dim());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out(i, j) = J[full_slot(s.family(), static_cast<std::size_t>(i))]
                   [full_slot(s.family(), static_cast<std::size_t>(j))];
  return out;
}

std::vector<std::vector<Rational>> jacobian_exact(const SystemParams& params,
                                                  std::span<const Rational> state) {
  if (state.size() != params.dim()) throw InvalidArgument("rational state has wrong dimension");
  const auto J = detail::eval_jacobian(params.coefficients(), params.epsilon(),
                                       expand<Rational>(params.family(), state));
  std::vector<std::vector<Rational>> out(params.dim(), std::vector<Rational>(params.dim()));
  for (std::size_t i = 0; i < params.dim(); ++i)
    for (std::size_t j = 0; j < params.dim(); ++j)
      out[i][j] = J[full_slot(params.family(), i)][full_slot(params.family(), j)];
  return out;
}

std::vector<Rational> vector_field_exact(const SystemParams& params,
                                         std::span<const Rational> state) {
  if (state.size() != params.dim()) throw InvalidArgument("rational state has wrong dimension");
  const auto v = detail::eval_field(params.coefficients(), params.epsilon(),
                                    expand<Rational>(params.family(), state));
  std::vector<Rational> out(params.dim());
  for (std::size_t i = 0; i < params.dim(); ++i) out[i] = v[full_slot(params.family(), i)];
  return out;
}

Eigen::VectorXd grad_Q(const SystemParams& params, const PhaseState& s) {
  require_layout(params, s);
  const auto& c = params.coefficients();
  const auto f = expand(s);
  const double d[3] = {double(c.d1), double(c.d2), double(c.d3)};
  const double y1 = f[detail::kY1], y2 = f[detail::kY2], y3 = f[detail::kY3];
  const double y1s = y1 * y1;

  detail::Full<double> g{};
  for (int j = 0; j < 3; ++j) g[j] = 2.0 * d[j] * f[j];
  // sum_i d_i dR_i/dY_k
  g[detail::kY1] = d[0] * 2.0 * y1 * (c.r1a * y2 * y2 + c.r1b * y3 * y3) -
                   d[1] * 2.0 * c.r2b * y1 * y2 * y2 - d[2] * 2.0 * c.r3b * y1 * y3 * y3;
  g[detail::kY2] = d[0] * 2.0 * c.r1a * y1s * y2 +
                   d[1] * (2.0 * c.r2a * y2 - 2.0 * c.r2b * y1s * y2) + d[2] * c.r3a * y3;
  g[detail::kY3] = d[0] * 2.0 * c.r1b * y1s * y3 + d[1] * 2.0 * c.r2c * y3 +
                   d[2] * (c.r3a * y2 - 2.0 * c.r3b * y1s * y3 - 2.0 * c.r3c * y3);
  g[detail::kW] = double(c.q_w) * params.eps();

  Eigen::VectorXd out(static_cast<Eigen::Index>(s.dim()));
  for (std::size_t i = 0; i < s.dim(); ++i)
    out(static_cast<Eigen::Index>(i)) = g[full_slot(s.family(), i)];
  return out;
}

Eigen::VectorXd grad_H(const SystemParams& params) {
  const auto mult = params.multiplicities();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(params.dim()));
  if (params.family() == Family::quaternionic) {
    out(0) = mult[0];
    out(1) = mult[1];
    out(2) = mult[2];
  } else {
    out(0) = mult[0];
    out(1) = mult[1];
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string_view to_string(InvariantSet set) {
  switch (set) {
    case InvariantSet::RS: return "RS";
    case InvariantSet::RS_steady: return "RS_steady";
    case InvariantSet::RS_Einstein: return "RS_Einstein";
    case InvariantSet::RS_FS: return "RS_FS";
    case InvariantSet::RS_KE: return "RS_KE";
    case InvariantSet::RS_round: return "RS_round";
    case InvariantSet::A: return "A";
    case InvariantSet::Psi: return "Psi";
    case InvariantSet::A_tilde: return "A_tilde";
  }
  return "?";
}

InvariantSet invariant_set_from_string(std::string_view name) {
  for (auto s : {InvariantSet::RS, InvariantSet::RS_steady, InvariantSet::RS_Einstein,
                 InvariantSet::RS_FS, InvariantSet::RS_KE, InvariantSet::RS_round, InvariantSet::A,
                 InvariantSet::Psi, InvariantSet::A_tilde}) {
    if (to_string(s) == name) return s;
  }
  throw InvalidArgument("unknown invariant set '" + std::string(name) + "'");
}

bool set_defined_for(Family f, InvariantSet set) {
  switch (set) {
    case InvariantSet::A_tilde: return f == Family::octonionic;
    case InvariantSet::Psi:
    case InvariantSet::RS_FS:
    case InvariantSet::RS_KE:
    case InvariantSet::RS_round:
    case InvariantSet::A: return f == Family::quaternionic;
    default: return true;
  }
}

std::vector<Margin> membership(const SystemParams& params, const PhaseState& s, InvariantSet set) {
  require_layout(params, s);
  if (!set_defined_for(params.family(), set)) {
    throw InvalidArgument("invariant set " + std::string(to_string(set)) +
                          " is not defined for the " + std::string(to_string(params.family())) +
                          " family");
  }
  const DerivedScalars d = derived_scalars(params, s);
  const bool quat = params.family() == Family::quaternionic;
  const double x1 = quat ? s.get(Var::X1) : 0.0;
  const double y1 = quat ? s.get(Var::Y1) : 1.0;
  const double x2 = s.get(Var::X2), x3 = s.get(Var::X3);
  const double y2 = s.get(Var::Y2), y3 = s.get(Var::Y3), w = s.get(Var::W);
  const double m = params.m();

  std::vector<Margin> out;
  auto ineq = [&](std::string label, double v) { out.push_back({std::move(label), v, false}); };
  auto eq = [&](std::string label, double v) { out.push_back({std::move(label), std::abs(v), true}); };
  auto rs = [&] {
    ineq("-Q", -d.Q);
    ineq("1-H", 1.0 - d.H);
    ineq("W", w);
    if (quat) ineq("Y1", y1);
    ineq("Y2", y2);
    ineq("Y3", y3);
  };
  auto fs = [&] {
    eq("Y2-Y3", y2 - y3);
    eq("X2-X3", x2 - x3);
  };

  switch (set) {
    case InvariantSet::RS: rs(); break;
    case InvariantSet::RS_steady:
      rs();
      eq("W", w);
      break;
    case InvariantSet::RS_Einstein:
      rs();
      eq("Q", d.Q);
      eq("H-1", d.H - 1.0);
      break;
    case InvariantSet::RS_round:
      eq("Y1-1", y1 - 1.0);
      eq("X1-X2", x1 - x2);
      break;
    case InvariantSet::RS_FS: fs(); break;
    case InvariantSet::RS_KE:
      fs();
      eq("(4m+4)Y2Y3+eps/2 W-X2(1+X1)",
         (4.0 * m + 4.0) * y2 * y3 + 0.5 * params.eps() * w - x2 * (1.0 + x1));
      eq("X2-Y1Y2", x2 - y1 * y2);
      break;
    case InvariantSet::A:
      rs();
      ineq("1-Y1", 1.0 - y1);
      ineq("X2-X1", x2 - x1);
      ineq("Y2-Y3", y2 - y3);
      ineq("2(Y2-Y3)+X3-X2", 2.0 * (y2 - y3) + x3 - x2);
      ineq("X1", x1);
      ineq("X2", x2);
      ineq("X3", x3);
      break;
    case InvariantSet::Psi:
      rs();
      ineq("-(X2-X3-Y2+(m+1)Y3)", -(x2 - x3 - y2 + (m + 1.0) * y3));
      ineq("Y2-(m+1)Y3", y2 - (m + 1.0) * y3);
      break;
    case InvariantSet::A_tilde:
      rs();
      ineq("Y2-Y3", y2 - y3);
      ineq("2(Y2-Y3)+X3-X2", 2.0 * (y2 - y3) + x3 - x2);
      ineq("X2", x2);
      ineq("X3", x3);
      break;
  }
  return out;
}

bool all_satisfied(std::span<const Margin> margins, double inequality_tol, double equality_tol) {
  return std::all_of(margins.begin(), margins.end(), [&](const Margin& mg) {
    return mg.satisfied(inequality_tol, equality_tol);
  });
}

}  // namespace soliton
