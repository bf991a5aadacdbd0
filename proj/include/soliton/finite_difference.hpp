#pragma once

#include <span>
#include <vector>

namespace soliton {

/// Finite-difference weights on arbitrary nodes (Fornberg's recursion).
/// Returns w[k][j]: weight of node j for the k-th derivative at x0, k = 0..max_order.
std::vector<std::vector<double>> fornberg_weights(double x0, std::span<const double> nodes,
                                                  int max_order);

/// First and second derivatives on a non-uniform grid using centred stencils
/// of `width` points (3, 5 or 7). Entries within width/2 of either end are NaN.
struct Derivatives {
  std::vector<double> d1;
  std::vector<double> d2;
};

Derivatives central_derivatives(std::span<const double> x, std::span<const double> y, int width);

struct LineFit {
  double slope = 0;
  double intercept = 0;
};

/// Ordinary least squares y = slope * x + intercept. Needs at least two distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Least-squares polynomial coefficients c0 + c1 x + ... of the given degree.
std::vector<double> fit_polynomial(std::span<const double> x, std::span<const double> y,
                                   int degree);

}  // namespace soliton
