#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "soliton/detail/polynomial_field.hpp"
#include "soliton/rational.hpp"

namespace soliton {

enum class Family { quaternionic, octonionic };

std::string_view to_string(Family f);

/// Named coordinates of the phase space. The octonionic layout has no X1 and no Y1.
enum class Var { X1, X2, X3, Y1, Y2, Y3, W };

/// Which Hopf fibration and which soliton type (epsilon = 0 steady, 1 expanding).
class SystemParams {
 public:
  static SystemParams quaternionic(int m, int epsilon);
  static SystemParams octonionic(int epsilon);

  Family family() const { return family_; }
  int m() const { return m_; }
  int epsilon() const { return epsilon_; }
  double eps() const { return static_cast<double>(epsilon_); }

  /// Dimension of the principal orbit: 4m+3 or 15.
  int n() const { return coeffs_.d1 + coeffs_.d2 + coeffs_.d3; }
  /// Summand dimensions: (1, 2, 4m) or (7, 8).
  std::vector<int> multiplicities() const;
  /// Number of phase-space coordinates: 7 or 5.
  std::size_t dim() const { return family_ == Family::quaternionic ? 7 : 5; }

  const detail::Coefficients& coefficients() const { return coeffs_; }

  /// Position of a variable in this family's layout, or -1 if absent.
  int index(Var v) const;

  SystemParams with_epsilon(int epsilon) const;

  friend bool operator==(const SystemParams& a, const SystemParams& b) {
    return a.family_ == b.family_ && a.m_ == b.m_ && a.epsilon_ == b.epsilon_;
  }

 private:
  SystemParams(Family f, int m, int epsilon);
  Family family_;
  int m_;
  int epsilon_;
  detail::Coefficients coeffs_;
};

/// A point of the polynomial phase space in the family's own layout.
class PhaseState {
 public:
  static constexpr std::size_t kMaxDim = 7;

  PhaseState() = default;
  explicit PhaseState(Family f) : family_(f) {}
  PhaseState(Family f, std::initializer_list<double> values);
  PhaseState(Family f, std::span<const double> values);

  Family family() const { return family_; }
  std::size_t dim() const { return family_ == Family::quaternionic ? 7 : 5; }

  double operator[](std::size_t i) const { return v_[i]; }
  double& operator[](std::size_t i) { return v_[i]; }

  /// Named access; throws InvalidArgument for X1/Y1 on an octonionic state.
  double get(Var v) const;
  void set(Var v, double value);

  std::span<const double> values() const { return {v_.data(), dim()}; }
  std::span<double> values() { return {v_.data(), dim()}; }
  Eigen::VectorXd to_vector() const;
  static PhaseState from_vector(Family f, const Eigen::VectorXd& v);

  bool all_finite() const;

  friend bool operator==(const PhaseState& a, const PhaseState& b) {
    return a.family_ == b.family_ && a.v_ == b.v_;
  }

 private:
  Family family_ = Family::quaternionic;
  std::array<double, kMaxDim> v_{};
};

/// Curvature-type functions of a state. Rt2/Rt3 are the Y1-free parts of R2/R3.
struct DerivedScalars {
  double R1 = 0, R2 = 0, R3 = 0, Rs = 0, H = 0, G = 0, Q = 0, Rt2 = 0, Rt3 = 0;
};

DerivedScalars derived_scalars(const SystemParams& params, const PhaseState& s);

/// The polynomial vector field V, returned in the state's layout.
PhaseState vector_field(const SystemParams& params, const PhaseState& s);

/// dV_i/ds_j in the family's layout (7x7 or 5x5).
Eigen::MatrixXd jacobian(const SystemParams& params, const PhaseState& s);

/// Exact jacobian for rational input states, on the family's layout.
std::vector<std::vector<Rational>> jacobian_exact(const SystemParams& params,
                                                  std::span<const Rational> state);

/// Exact vector field for rational input states.
std::vector<Rational> vector_field_exact(const SystemParams& params,
                                         std::span<const Rational> state);

/// Gradients of Q and H (analytic) at a state, in the family's layout.
Eigen::VectorXd grad_Q(const SystemParams& params, const PhaseState& s);
Eigen::VectorXd grad_H(const SystemParams& params);

// ---------------------------------------------------------------------------
// Invariant sets

enum class InvariantSet { RS, RS_steady, RS_Einstein, RS_FS, RS_KE, RS_round, A, Psi, A_tilde };

std::string_view to_string(InvariantSet set);
InvariantSet invariant_set_from_string(std::string_view name);

/// One defining constraint. Inequalities are oriented so value >= 0 means
/// satisfied; equalities carry |residual| in value.
struct Margin {
  std::string label;
  double value = 0;
  bool equality = false;

  bool satisfied(double inequality_tol = 0.0, double equality_tol = 1e-9) const {
    return equality ? value <= equality_tol : value >= -inequality_tol;
  }
};

/// Throws InvalidArgument if the set is not defined for the family.
std::vector<Margin> membership(const SystemParams& params, const PhaseState& s, InvariantSet set);

bool set_defined_for(Family f, InvariantSet set);

bool all_satisfied(std::span<const Margin> margins, double inequality_tol = 0.0,
                   double equality_tol = 1e-9);

}  // namespace soliton
