#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "soliton/phase_system.hpp"
#include "soliton/rational.hpp"

namespace soliton {

/// P_HP: collapse to HP^m.  P_dot: full collapse (quaternionic).
/// P_OP1: collapse to OP^1.  P_O: full collapse (octonionic).
enum class EquilibriumLabel { P_HP, P_dot, P_OP1, P_O };

std::string_view to_string(EquilibriumLabel label);
EquilibriumLabel equilibrium_from_string(std::string_view name);

struct Equilibrium {
  EquilibriumLabel label;
  PhaseState point;
  std::vector<Rational> exact;
  int d_S = 0;  ///< dimension of the collapsing sphere
};

Equilibrium critical_point(const SystemParams& params, EquilibriumLabel label);

struct UnstableBasis {
  double eigenvalue = 0;
  Rational eigenvalue_exact{0};
  /// Quaternionic: u1..u4 / v1..v4 as closed-form integer vectors.
  /// Octonionic P_O: (v1, v3, v4) analogues, unit norm.
  std::vector<Eigen::VectorXd> vectors;
  bool closed_form = false;
};

/// Unstable eigenvectors at a critical point for params.epsilon().
/// Throws EigenSolverError (with the matrix in the message) if the expected
/// unstable eigenspace cannot be resolved.
UnstableBasis unstable_basis(const SystemParams& params, EquilibriumLabel label);

/// Closed-form quaternionic eigenvectors as exact rationals.
std::vector<std::vector<Rational>> closed_form_vectors(const SystemParams& params,
                                                       EquilibriumLabel label);

/// All eigenvalues of the jacobian at the point, sorted by descending real part.
std::vector<std::complex<double>> spectrum(const SystemParams& params, EquilibriumLabel label);

/// max_i ||(J - lambda I) v_i|| / ||v_i||
double eigen_residual(const SystemParams& params, EquilibriumLabel label,
                      const UnstableBasis& basis);

/// Seed parameters on the unstable manifold. Quaternionic: (s1, s2, s3, s4);
/// octonionic: (s1, s3, s4).
struct ShootSpec {
  std::vector<double> s;
  double delta = 1e-7;
  bool einstein_subfamily = false;
};

/// P + delta * sum s_i u_i, projected onto the invariant subsets implied by
/// the zero pattern of s. Throws SeedOutOfRegion if the seed leaves RS.
PhaseState seed_state(const SystemParams& params, const Equilibrium& eq,
                      const UnstableBasis& basis, const ShootSpec& spec);

}  // namespace soliton
