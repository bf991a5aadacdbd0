#pragma once

// Scalar-generic evaluation of the polynomial phase system. Instantiated with
// double in the library and with Rational where exact comparisons are wanted.
//
// Both Hopf families go through the same code on the 7-slot superset layout
// (X1, X2, X3, Y1, Y2, Y3, W). The octonionic family has no X1 summand (d1 = 0)
// and its fiber is round, which is encoded by zero Y1 coefficients; Y1 is
// carried as the constant 1.

#include <array>
#include <cstddef>

namespace soliton::detail {

inline constexpr std::size_t kX1 = 0, kX2 = 1, kX3 = 2, kY1 = 3, kY2 = 4, kY3 = 5, kW = 6;

/// Integer data of one family:
///   R1 = r1a Y1^2 Y2^2 + r1b Y1^2 Y3^2
///   R2 = r2a Y2^2 - r2b Y1^2 Y2^2 + r2c Y3^2
///   R3 = r3a Y2 Y3 - r3b Y1^2 Y3^2 - r3c Y3^2
/// with summand dimensions (d1, d2, d3) and Q's W coefficient q_w = (n-1)/2.
struct Coefficients {
  int d1, d2, d3;
  int r1a, r1b;
  int r2a, r2b, r2c;
  int r3a, r3b, r3c;
  int q_w;
};

constexpr Coefficients quaternionic_coefficients(int m) {
  return {1, 2, 4 * m, 2, 4 * m, 4, 2, 4 * m, 4 * m + 8, 2, 4, 2 * m + 1};
}

constexpr Coefficients octonionic_coefficients() {
  return {0, 7, 8, 0, 0, 6, 0, 8, 28, 0, 14, 7};
}

template <class T>
using Full = std::array<T, 7>;

template <class T>
struct Scalars {
  T R1, R2, R3, Rs, H, G, Q, Rt2, Rt3;
};

template <class T>
Scalars<T> eval_scalars(const Coefficients& c, int epsilon, const Full<T>& s) {
  const T x1 = s[kX1], x2 = s[kX2], x3 = s[kX3];
  const T y1 = s[kY1], y2 = s[kY2], y3 = s[kY3], w = s[kW];
  const T y1s = y1 * y1, y2s = y2 * y2, y3s = y3 * y3, y23 = y2 * y3;

  Scalars<T> out;
  out.R1 = T(c.r1a) * y1s * y2s + T(c.r1b) * y1s * y3s;
  out.R2 = T(c.r2a) * y2s - T(c.r2b) * y1s * y2s + T(c.r2c) * y3s;
  out.R3 = T(c.r3a) * y23 - T(c.r3b) * y1s * y3s - T(c.r3c) * y3s;
  out.Rs = T(c.d1) * out.R1 + T(c.d2) * out.R2 + T(c.d3) * out.R3;
  out.H = T(c.d1) * x1 + T(c.d2) * x2 + T(c.d3) * x3;
  out.G = T(c.d1) * x1 * x1 + T(c.d2) * x2 * x2 + T(c.d3) * x3 * x3;
  out.Q = out.G + out.Rs + T(c.q_w * epsilon) * w - T(1);
  out.Rt2 = T(c.r2a) * y2s + T(c.r2c) * y3s;
  out.Rt3 = T(c.r3a) * y23 - T(c.r3c) * y3s;
  return out;
}

template <class T>
Full<T> eval_field(const Coefficients& c, int epsilon, const Full<T>& s) {
  const Scalars<T> d = eval_scalars(c, epsilon, s);
  const T half_eps_w = T(epsilon) * s[kW] / T(2);
  const T shift = d.G - half_eps_w;

  Full<T> v;
  v[kX1] = s[kX1] * (shift - T(1)) + d.R1 + half_eps_w;
  v[kX2] = s[kX2] * (shift - T(1)) + d.R2 + half_eps_w;
  v[kX3] = s[kX3] * (shift - T(1)) + d.R3 + half_eps_w;
  v[kY1] = s[kY1] * (s[kX1] - s[kX2]);
  v[kY2] = s[kY2] * (shift - s[kX2]);
  v[kY3] = s[kY3] * (shift + s[kX2] - T(2) * s[kX3]);
  v[kW] = T(2) * s[kW] * shift;
  if (c.d1 == 0) {
    // no X1 summand, round fiber: these slots are not part of the state
    v[kX1] = T(0);
    v[kY1] = T(0);
  }
  return v;
}

/// Row i, column j holds dV_i / ds_j on the superset layout.
template <class T>
std::array<Full<T>, 7> eval_jacobian(const Coefficients& c, int epsilon, const Full<T>& s) {
  const T x[3] = {s[kX1], s[kX2], s[kX3]};
  const T d[3] = {T(c.d1), T(c.d2), T(c.d3)};
  const T y1 = s[kY1], y2 = s[kY2], y3 = s[kY3], w = s[kW];
  const T e = T(epsilon) / T(2);
  const Scalars<T> sc = eval_scalars(c, epsilon, s);
  const T shift = sc.G - e * w;

  // dG/dX_j
  T dG[3];
  for (int j = 0; j < 3; ++j) dG[j] = T(2) * d[j] * x[j];

  std::array<Full<T>, 7> J;
  for (auto& row : J) row.fill(T(0));

  // dR_i/dY_k, k over (Y1, Y2, Y3)
  const T y1s = y1 * y1;
  const T dR[3][3] = {
      {T(2) * y1 * (T(c.r1a) * y2 * y2 + T(c.r1b) * y3 * y3), T(2 * c.r1a) * y1s * y2,
       T(2 * c.r1b) * y1s * y3},
      {-T(2 * c.r2b) * y1 * y2 * y2, T(2 * c.r2a) * y2 - T(2 * c.r2b) * y1s * y2, T(2 * c.r2c) * y3},
      {-T(2 * c.r3b) * y1 * y3 * y3, T(c.r3a) * y3,
       T(c.r3a) * y2 - T(2 * c.r3b) * y1s * y3 - T(2 * c.r3c) * y3},
  };

  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      J[i][j] = x[i] * dG[j];
      if (i == j) J[i][j] = J[i][j] + shift - T(1);
    }
    for (int k = 0; k < 3; ++k) J[i][kY1 + k] = dR[i][k];
    J[i][kW] = e - e * x[i];
  }

  J[kY1][kX1] = y1;
  J[kY1][kX2] = -y1;
  J[kY1][kY1] = x[0] - x[1];

  for (int j = 0; j < 3; ++j) {
    J[kY2][j] = y2 * dG[j];
    J[kY3][j] = y3 * dG[j];
    J[kW][j] = T(2) * w * dG[j];
  }
  J[kY2][kX2] = J[kY2][kX2] - y2;
  J[kY2][kY2] = shift - x[1];
  J[kY2][kW] = -e * y2;

  J[kY3][kX2] = J[kY3][kX2] + y3;
  J[kY3][kX3] = J[kY3][kX3] - T(2) * y3;
  J[kY3][kY3] = shift + x[1] - T(2) * x[2];
  J[kY3][kW] = -e * y3;

  J[kW][kW] = T(2) * sc.G - T(4) * e * w;

  if (c.d1 == 0) {
    J[kX1].fill(T(0));
    J[kY1].fill(T(0));
  }
  return J;
}

}  // namespace soliton::detail
