#include "soliton/finite_difference.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "soliton/errors.hpp"

namespace soliton {

std::vector<std::vector<double>> fornberg_weights(double x0, std::span<const double> nodes,
                                                  int max_order) {
  const int n = static_cast<int>(nodes.size());
  if (n == 0 || max_order < 0 || max_order >= n) {
    throw InvalidArgument("fornberg_weights: need more nodes than the derivative order");
  }
  std::vector<std::vector<double>> c(max_order + 1, std::vector<double>(n, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, max_order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

Derivatives central_derivatives(std::span<const double> x, std::span<const double> y, int width) {
  if (width != 3 && width != 5 && width != 7) throw InvalidArgument("stencil width must be 3, 5 or 7");
  if (x.size() != y.size()) throw InvalidArgument("central_derivatives: size mismatch");
  const std::size_t n = x.size();
  const std::size_t half = static_cast<std::size_t>(width / 2);
  Derivatives out;
  out.d1.assign(n, std::numeric_limits<double>::quiet_NaN());
  out.d2.assign(n, std::numeric_limits<double>::quiet_NaN());
  if (n < static_cast<std::size_t>(width)) return out;
  for (std::size_t i = half; i + half < n; ++i) {
    const auto nodes = x.subspan(i - half, static_cast<std::size_t>(width));
    const auto w = fornberg_weights(x[i], nodes, 2);
    double a = 0, b = 0;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      a += w[1][j] * y[i - half + j];
      b += w[2][j] * y[i - half + j];
    }
    out.d1[i] = a;
    out.d2[i] = b;
  }
  return out;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const auto c = fit_polynomial(x, y, 1);
  return {c[1], c[0]};
}

std::vector<double> fit_polynomial(std::span<const double> x, std::span<const double> y,
                                   int degree) {
  if (x.size() != y.size() || x.size() < static_cast<std::size_t>(degree + 1)) {
    throw InsufficientData("polynomial fit needs at least degree+1 points");
  }
  const auto n = static_cast<Eigen::Index>(x.size());
  // centre and scale x for conditioning
  double lo = x[0], hi = x[0];
  for (double v : x) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi == lo) throw InsufficientData("polynomial fit needs distinct abscissae");
  const double mid = 0.5 * (hi + lo), scale = 0.5 * (hi - lo);
  Eigen::MatrixXd A(n, degree + 1);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = (x[static_cast<std::size_t>(i)] - mid) / scale;
    double p = 1;
    for (int k = 0; k <= degree; ++k, p *= u) A(i, k) = p;
    b(i) = y[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd cu = A.colPivHouseholderQr().solve(b);
  // expand sum cu_k ((x - mid)/scale)^k into powers of x
  std::vector<double> out(static_cast<std::size_t>(degree + 1), 0.0);
  for (int k = 0; k <= degree; ++k) {
    // ((x - mid)/scale)^k = scale^-k sum_j C(k,j) x^j (-mid)^(k-j)
    double ck = 1;  // C(k, j)
    for (int j = 0; j <= k; ++j) {
      out[static_cast<std::size_t>(j)] +=
          cu(k) * ck * std::pow(-mid, k - j) / std::pow(scale, k);
      ck = ck * (k - j) / (j + 1);
    }
  }
  return out;
}

}  // namespace soliton
