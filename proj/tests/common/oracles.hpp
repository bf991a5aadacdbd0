#pragma once

// Independently typed reference data: the reference linearisations, unstable
// eigenvectors and gradients at the critical points, and a second
// transcription of the polynomial vector field. Nothing here calls into the
// library, so agreement with it is a genuine cross-check.

#include <array>
#include <cstdint>
#include <vector>

#include "soliton/rational.hpp"

namespace oracle {

using soliton::Rational;
using RMatrix = std::vector<std::vector<Rational>>;
using RVector = std::vector<Rational>;

inline RMatrix jacobian_PHP(int m, int eps) {
  const Rational e(eps);
  return {
      {Rational(-4, 9), Rational(4, 9), 0, Rational(4, 9), Rational(4, 3), 0, e / 3},
      {Rational(2, 9), Rational(-2, 9), 0, Rational(-4, 9), Rational(4, 3), 0, e / 3},
      {0, 0, Rational(-2, 3), 0, 0, Rational(4 * m + 8, 3), e / 2},
      {1, -1, 0, 0, 0, 0, 0},
      {Rational(2, 9), Rational(1, 9), 0, 0, 0, 0, -e / 6},
      {0, 0, 0, 0, 0, Rational(2, 3), 0},
      {0, 0, 0, 0, 0, 0, Rational(2, 3)},
  };
}

inline RMatrix jacobian_Pdot(int m, int eps) {
  const std::int64_t n = 4 * m + 3, n2 = n * n;
  const Rational e(eps);
  const Rational ew = Rational(2 * m + 1, n) * e;
  const Rational ey = -e / Rational(8 * m + 6);
  return {
      {Rational(-(16 * m * m + 20 * m + 4), n2), Rational(4, n2), Rational(8 * m, n2),
       Rational(8 * m + 4, n2), Rational(4, n), Rational(8 * m, n), ew},
      {Rational(2, n2), Rational(-(16 * m * m + 20 * m + 2), n2), Rational(8 * m, n2),
       Rational(-4, n2), Rational(4, n), Rational(8 * m, n), ew},
      {Rational(2, n2), Rational(4, n2), Rational(-(16 * m * m + 12 * m + 6), n2),
       Rational(-4, n2), Rational(4 * m + 8, n), Rational(4 * m - 4, n), ew},
      {1, -1, 0, 0, 0, 0, 0},
      {Rational(2, n2), Rational(1 - 4 * m, n2), Rational(8 * m, n2), 0, 0, 0, ey},
      {Rational(2, n2), Rational(4 * m + 7, n2), Rational(-6, n2), 0, 0, 0, ey},
      {0, 0, 0, 0, 0, 0, Rational(2, n)},
  };
}

/// u1..u4 at the collapse to HP^m.
inline std::vector<RVector> u_vectors(int m, int eps) {
  const std::int64_t mm = m, e = eps;
  return {
      {-4 * mm * (mm + 2), -4 * mm * (mm + 2), 3 * (mm + 2), 0, -2 * mm * (mm + 2), 3, 0},
      {-4, 2, 0, -9, -1, 0, 0},
      {-4 * mm * e, -4 * mm * e, 3 * e, 0, -2 * (mm + 1) * e, 0, 8},
      {-2, -2, 0, 0, -1, 0, 0},
  };
}

/// v1..v4 at the full collapse.
inline std::vector<RVector> v_vectors(int m, int eps) {
  const std::int64_t mm = m, e = eps, n = 4 * mm + 3;
  return {
      {-4 * mm, -4 * mm, 3, 0, 2 * mm, -(2 * mm + 3), 0},
      {-(8 * mm + 4), 2, 2, -n * n, -1, -1, 0},
      {0, 0, 0, 0, -e, -e, 4},
      {-2, -2, -2, 0, -1, -1, 0},
  };
}

/// Gradient of Q at the collapse to HP^m; H and W have constant gradients.
inline RVector grad_Q_PHP(int m, int eps) {
  const std::int64_t n = 4 * m + 3;
  return {Rational(2, 3), Rational(4, 3), 0, Rational(-4, 9), 4, Rational(16 * m * (m + 2), 3),
          Rational(n - 1) * Rational(eps, 2)};
}
inline RVector grad_H(int m) { return {1, 2, 4 * m, 0, 0, 0, 0}; }
inline RVector grad_W() { return {0, 0, 0, 0, 0, 0, 1}; }

/// Unstable directions at the octonionic full collapse, eigenvalue 2/15,
/// in (X2, X3, Y2, Y3, W) order, mirroring v1, v3, v4.
inline std::vector<RVector> octonionic_vectors(int eps) {
  const std::int64_t e = eps;
  return {{-8, 7, 4, -11, 0}, {0, 0, -e, -e, 4}, {-2, -2, -1, -1, 0}};
}

inline Rational dot(const RVector& a, const RVector& b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline RVector mat_vec(const RMatrix& A, const RVector& v) {
  RVector out;
  for (const auto& row : A) out.push_back(dot(row, v));
  return out;
}

/// Quaternionic right-hand side, state (X1, X2, X3, Y1, Y2, Y3, W).
inline std::array<double, 7> field_quaternionic(int m, double eps, const std::array<double, 7>& s) {
  const double X1 = s[0], X2 = s[1], X3 = s[2], Y1 = s[3], Y2 = s[4], Y3 = s[5], W = s[6];
  const double R1 = 2 * Y1 * Y1 * Y2 * Y2 + 4 * m * Y1 * Y1 * Y3 * Y3;
  const double R2 = 4 * Y2 * Y2 - 2 * Y1 * Y1 * Y2 * Y2 + 4 * m * Y3 * Y3;
  const double R3 = (4 * m + 8) * Y2 * Y3 - 2 * Y1 * Y1 * Y3 * Y3 - 4 * Y3 * Y3;
  const double G = X1 * X1 + 2 * X2 * X2 + 4 * m * X3 * X3;
  const double g = G - eps / 2 * W;
  return {X1 * (g - 1) + R1 + eps / 2 * W,
          X2 * (g - 1) + R2 + eps / 2 * W,
          X3 * (g - 1) + R3 + eps / 2 * W,
          Y1 * (X1 - X2),
          Y2 * (g - X2),
          Y3 * (g + X2 - 2 * X3),
          2 * W * g};
}

/// Octonionic right-hand side, state (X2, X3, Y2, Y3, W).
inline std::array<double, 5> field_octonionic(double eps, const std::array<double, 5>& s) {
  const double X2 = s[0], X3 = s[1], Y2 = s[2], Y3 = s[3], W = s[4];
  const double R2 = 6 * Y2 * Y2 + 8 * Y3 * Y3;
  const double R3 = 28 * Y2 * Y3 - 14 * Y3 * Y3;
  const double G = 7 * X2 * X2 + 8 * X3 * X3;
  const double g = G - eps / 2 * W;
  return {X2 * (g - 1) + R2 + eps / 2 * W,
          X3 * (g - 1) + R3 + eps / 2 * W,
          Y2 * (g - X2),
          Y3 * (g + X2 - 2 * X3),
          2 * W * g};
}

/// Q = G + Rs + (n-1) eps W / 2 - 1 and H, typed from the definitions.
inline std::array<double, 2> QH_quaternionic(int m, double eps, const std::array<double, 7>& s) {
  const double X1 = s[0], X2 = s[1], X3 = s[2], Y1 = s[3], Y2 = s[4], Y3 = s[5], W = s[6];
  const double R1 = 2 * Y1 * Y1 * Y2 * Y2 + 4 * m * Y1 * Y1 * Y3 * Y3;
  const double R2 = 4 * Y2 * Y2 - 2 * Y1 * Y1 * Y2 * Y2 + 4 * m * Y3 * Y3;
  const double R3 = (4 * m + 8) * Y2 * Y3 - 2 * Y1 * Y1 * Y3 * Y3 - 4 * Y3 * Y3;
  const double G = X1 * X1 + 2 * X2 * X2 + 4 * m * X3 * X3;
  const double n = 4 * m + 3;
  return {G + R1 + 2 * R2 + 4 * m * R3 + (n - 1) * eps / 2 * W - 1, X1 + 2 * X2 + 4 * m * X3};
}

}  // namespace oracle
