#pragma once

#include <functional>
#include <vector>

namespace nsl {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule mapped to [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

/// n-point Gauss-Hermite rule for the weight e^{-x^2} on the real line.
QuadratureRule gauss_hermite(int n);

/// Gauss-Hermite rule rescaled so that sum w_i f(x_i) approximates the
/// expectation of f under the standard normal law.
QuadratureRule gauss_hermite_normal(int n);

struct Tolerance {
  double abs = 1e-10;
  double rel = 1e-10;
};

struct IntegralResult {
  double value = 0.0;
  double abs_error = 0.0;
  bool converged = true;
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod integration over [a, b]. Either end may be infinite.
IntegralResult integrate(const Integrand& f, double a, double b, Tolerance tol = {});

/// Same, but the integrand is split at the given interior points (kinks or
/// jumps). `points` must be sorted and lie strictly inside (a, b).
IntegralResult integrate(const Integrand& f, double a, double b, const std::vector<double>& points,
                         Tolerance tol = {});

/// Iterated adaptive integral of f(x, y) over a rectangle, with optional
/// break points on each axis.
IntegralResult integrate_rectangle(const std::function<double(double, double)>& f, double x0, double x1,
                                   double y0, double y1, const std::vector<double>& x_points = {},
                                   const std::vector<double>& y_points = {}, Tolerance tol = {});

}  // namespace nsl
