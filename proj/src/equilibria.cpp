#include "soliton/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "soliton/errors.hpp"

namespace soliton {

namespace {

bool label_matches(Family f, EquilibriumLabel label) {
  const bool quat_label = label == EquilibriumLabel::P_HP || label == EquilibriumLabel::P_dot;
  return quat_label == (f == Family::quaternionic);
}

void require_label(const SystemParams& params, EquilibriumLabel label) {
  if (!label_matches(params.family(), label)) {
    throw InvalidArgument("critical point " + std::string(to_string(label)) +
                          " does not belong to the " + std::string(to_string(params.family())) +
                          " family");
  }
}

std::string dump(const Eigen::MatrixXd& m) {
  std::ostringstream os;
  os.precision(17);
  os << m;
  return os.str();
}

Eigen::VectorXd to_double(const std::vector<Rational>& v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i].to_double();
  return out;
}

Eigen::MatrixXd kernel_of(const Eigen::MatrixXd& a, Eigen::Index expected, const std::string& what,
                          const Eigen::MatrixXd& context) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  lu.setThreshold(1e-10);
  Eigen::MatrixXd k = lu.kernel();
  if (lu.dimensionOfKernel() != expected) {
    throw EigenSolverError(what + ": expected a " + std::to_string(expected) +
                           "-dimensional kernel, found " +
                           std::to_string(lu.dimensionOfKernel()) + "; jacobian:\n" +
                           dump(context));
  }
  return k;
}

// Reduced row echelon form of the rows of b (used to canonicalise a basis).
Eigen::MatrixXd rref(Eigen::MatrixXd b) {
  Eigen::Index lead = 0;
  for (Eigen::Index r = 0; r < b.rows() && lead < b.cols(); ++r, ++lead) {
    Eigen::Index piv = r;
    for (Eigen::Index i = r + 1; i < b.rows(); ++i)
      if (std::abs(b(i, lead)) > std::abs(b(piv, lead))) piv = i;
    if (std::abs(b(piv, lead)) < 1e-12) {
      --r;
      continue;
    }
    b.row(r).swap(b.row(piv));
    b.row(r) /= b(r, lead);
    for (Eigen::Index i = 0; i < b.rows(); ++i)
      if (i != r) b.row(i) -= b(i, lead) * b.row(r);
  }
  return b;
}

Eigen::VectorXd unit(Eigen::VectorXd v) { return v / v.norm(); }

void first_nonzero_positive(Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-12) {
      if (v(i) < 0) v = -v;
      return;
    }
  }
}

std::vector<std::vector<Rational>> ints(std::initializer_list<std::initializer_list<long long>> rows) {
  std::vector<std::vector<Rational>> out;
  for (const auto& r : rows) {
    std::vector<Rational> v;
    for (long long x : r) v.emplace_back(x);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

std::string_view to_string(EquilibriumLabel label) {
  switch (label) {
    case EquilibriumLabel::P_HP: return "P_HP";
    case EquilibriumLabel::P_dot: return "P_dot";
    case EquilibriumLabel::P_OP1: return "P_OP1";
    case EquilibriumLabel::P_O: return "P_O";
  }
  return "?";
}

EquilibriumLabel equilibrium_from_string(std::string_view name) {
  for (auto l : {EquilibriumLabel::P_HP, EquilibriumLabel::P_dot, EquilibriumLabel::P_OP1,
                 EquilibriumLabel::P_O}) {
    if (to_string(l) == name) return l;
  }
  throw InvalidArgument("unknown critical point '" + std::string(name) + "'");
}

Equilibrium critical_point(const SystemParams& params, EquilibriumLabel label) {
  require_label(params, label);
  const long long n = params.n();
  const Rational z(0), one(1);
  Equilibrium eq{label, PhaseState(params.family()), {}, 0};
  switch (label) {
    case EquilibriumLabel::P_HP: {
      const Rational t(1, 3);
      eq.exact = {t, t, z, one, t, z, z};
      eq.d_S = 3;
      break;
    }
    case EquilibriumLabel::P_dot: {
      const Rational t(1, n);
      eq.exact = {t, t, t, one, t, t, z};
      eq.d_S = static_cast<int>(n);
      break;
    }
    case EquilibriumLabel::P_OP1: {
      const Rational t(1, 7);
      eq.exact = {t, z, t, z, z};
      eq.d_S = 7;
      break;
    }
    case EquilibriumLabel::P_O: {
      const Rational t(1, 15);
      eq.exact = {t, t, t, t, z};
      eq.d_S = 15;
      break;
    }
  }
  for (std::size_t i = 0; i < eq.exact.size(); ++i) eq.point[i] = eq.exact[i].to_double();
  return eq;
}

std::vector<std::vector<Rational>> closed_form_vectors(const SystemParams& params,
                                                       EquilibriumLabel label) {
  require_label(params, label);
  if (params.family() != Family::quaternionic) {
    throw InvalidArgument("closed-form eigenvectors exist only for the quaternionic family");
  }
  const long long m = params.m(), e = params.epsilon(), n = params.n();
  if (label == EquilibriumLabel::P_HP) {
    return ints({{-4 * m * (m + 2), -4 * m * (m + 2), 3 * (m + 2), 0, -2 * m * (m + 2), 3, 0},
                 {-4, 2, 0, -9, -1, 0, 0},
                 {-4 * m * e, -4 * m * e, 3 * e, 0, -2 * (m + 1) * e, 0, 8},
                 {-2, -2, 0, 0, -1, 0, 0}});
  }
  return ints({{-4 * m, -4 * m, 3, 0, 2 * m, -(2 * m + 3), 0},
               {-(8 * m + 4), 2, 2, -n * n, -1, -1, 0},
               {0, 0, 0, 0, -e, -e, 4},
               {-2, -2, -2, 0, -1, -1, 0}});
}

std::vector<std::complex<double>> spectrum(const SystemParams& params, EquilibriumLabel label) {
  const Equilibrium eq = critical_point(params, label);
  const Eigen::MatrixXd J = jacobian(params, eq.point);
  Eigen::EigenSolver<Eigen::MatrixXd> es(J, false);
  if (es.info() != Eigen::Success) {
    throw EigenSolverError("eigenvalue computation failed at " + std::string(to_string(label)) +
                           "; jacobian:\n" + dump(J));
  }
  std::vector<std::complex<double>> out(es.eigenvalues().begin(), es.eigenvalues().end());
  std::sort(out.begin(), out.end(), [](auto a, auto b) { return a.real() > b.real(); });
  return out;
}

UnstableBasis unstable_basis(const SystemParams& params, EquilibriumLabel label) {
  require_label(params, label);
  const Equilibrium eq = critical_point(params, label);
  UnstableBasis basis;
  basis.eigenvalue_exact = Rational(2, eq.d_S);
  basis.eigenvalue = basis.eigenvalue_exact.to_double();

  if (params.family() == Family::quaternionic) {
    for (const auto& v : closed_form_vectors(params, label)) basis.vectors.push_back(to_double(v));
    basis.closed_form = true;
    return basis;
  }

  const Eigen::MatrixXd J = jacobian(params, eq.point);
  const auto dim = static_cast<Eigen::Index>(params.dim());
  const Eigen::MatrixXd shifted = J - basis.eigenvalue * Eigen::MatrixXd::Identity(dim, dim);
  const Eigen::MatrixXd E = kernel_of(shifted, 3, "unstable eigenspace", J);

  const int iX2 = params.index(Var::X2), iX3 = params.index(Var::X3);
  const int iY2 = params.index(Var::Y2), iY3 = params.index(Var::Y3), iW = params.index(Var::W);
  Eigen::RowVectorXd w_row = Eigen::RowVectorXd::Zero(dim);
  w_row(iW) = 1;
  Eigen::RowVectorXd x_row = Eigen::RowVectorXd::Zero(dim);
  x_row(iX2) = 1;
  x_row(iX3) = -1;
  Eigen::RowVectorXd y_row = Eigen::RowVectorXd::Zero(dim);
  y_row(iY2) = 1;
  y_row(iY3) = -1;
  const Eigen::RowVectorXd q_row = grad_Q(params, eq.point).transpose();
  const Eigen::RowVectorXd h_row = grad_H(params).transpose();

  auto pick = [&](std::initializer_list<Eigen::RowVectorXd> rows, const std::string& what) {
    Eigen::MatrixXd c(static_cast<Eigen::Index>(rows.size()), dim);
    Eigen::Index r = 0;
    for (const auto& row : rows) c.row(r++) = row;
    const Eigen::MatrixXd k = kernel_of(c * E, 1, what, J);
    return unit(E * k.col(0));
  };

  if (label == EquilibriumLabel::P_O) {
    Eigen::VectorXd v1 = pick({w_row, q_row}, "squashing direction");
    if (y_row.dot(v1) < 0) v1 = -v1;
    Eigen::VectorXd v3 = pick({x_row, y_row, q_row}, "expanding direction");
    if (v3(iW) < 0) v3 = -v3;
    Eigen::VectorXd v4 = pick({w_row, x_row, y_row}, "non-Einstein direction");
    if (h_row.dot(v4) > 0) v4 = -v4;
    basis.vectors = {v1, v3, v4};
  } else {
    const Eigen::MatrixXd canon = rref(E.transpose());
    for (Eigen::Index r = 0; r < canon.rows(); ++r) {
      Eigen::VectorXd v = unit(canon.row(r).transpose());
      first_nonzero_positive(v);
      basis.vectors.push_back(v);
    }
  }
  return basis;
}

double eigen_residual(const SystemParams& params, EquilibriumLabel label,
                      const UnstableBasis& basis) {
  const Equilibrium eq = critical_point(params, label);
  const Eigen::MatrixXd J = jacobian(params, eq.point);
  double worst = 0;
  for (const auto& v : basis.vectors) {
    worst = std::max(worst, (J * v - basis.eigenvalue * v).norm() / v.norm());
  }
  return worst;
}

PhaseState seed_state(const SystemParams& params, const Equilibrium& eq,
                      const UnstableBasis& basis, const ShootSpec& spec) {
  if (spec.s.size() != basis.vectors.size()) {
    throw InvalidArgument("shoot vector has " + std::to_string(spec.s.size()) +
                          " entries, the unstable basis has " +
                          std::to_string(basis.vectors.size()));
  }
  if (!(spec.delta >= 0) || !std::isfinite(spec.delta)) {
    throw InvalidArgument("seed amplitude delta must be finite and non-negative");
  }
  if (spec.delta == 0) return eq.point;

  Eigen::VectorXd x = eq.point.to_vector();
  for (std::size_t i = 0; i < spec.s.size(); ++i) x += spec.delta * spec.s[i] * basis.vectors[i];
  PhaseState s = PhaseState::from_vector(params.family(), x);

  const bool quat = params.family() == Family::quaternionic;
  const double s1 = spec.s[0];
  const double s2 = quat ? spec.s[1] : 1.0;
  const double s4 = spec.s.back();

  auto project = [&] {
    if (params.epsilon() == 0) s.set(Var::W, 0.0);
    if (quat && s2 == 0) {
      s.set(Var::Y1, 1.0);
      const double avg = 0.5 * (s.get(Var::X1) + s.get(Var::X2));
      s.set(Var::X1, avg);
      s.set(Var::X2, avg);
    }
    const bool fs_family = (quat && eq.label == EquilibriumLabel::P_dot) || !quat;
    if (fs_family && s1 == 0) {
      const double y = 0.5 * (s.get(Var::Y2) + s.get(Var::Y3));
      s.set(Var::Y2, y);
      s.set(Var::Y3, y);
      const double xx = 0.5 * (s.get(Var::X2) + s.get(Var::X3));
      s.set(Var::X2, xx);
      s.set(Var::X3, xx);
    }
  };
  project();

  if (s4 == 0) {
    for (int it = 0; it < 4; ++it) {
      const DerivedScalars d = derived_scalars(params, s);
      Eigen::MatrixXd a(2, static_cast<Eigen::Index>(params.dim()));
      a.row(0) = grad_Q(params, s).transpose();
      a.row(1) = grad_H(params).transpose();
      const Eigen::Vector2d r(d.Q, d.H - 1.0);
      const Eigen::VectorXd step = a.transpose() * (a * a.transpose()).ldlt().solve(r);
      s = PhaseState::from_vector(params.family(), s.to_vector() - step);
      project();
    }
  }

  const auto margins = membership(params, s, InvariantSet::RS);
  for (const auto& mg : margins) {
    if (!mg.satisfied(1e-12)) {
      throw SeedOutOfRegion("seed leaves RS: margin " + mg.label + " = " +
                            std::to_string(mg.value) + " (delta = " + std::to_string(spec.delta) +
                            ")");
    }
  }
  return s;
}

}  // namespace soliton
