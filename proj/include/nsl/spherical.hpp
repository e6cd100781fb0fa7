#pragma once

#include <array>
#include <vector>

#include "nsl/estimate.hpp"
#include "nsl/quadrature.hpp"

namespace nsl {

inline constexpr int kDefaultDepth = 30;

/// Correlation rho and radii r, s of two concentric circles. The only
/// supported ambient dimension is n = 2.
struct SphericalKernelParams {
  double rho = 0.0;
  double r = 1.0;
  double s = 1.0;
  int n = 2;

  void validate() const;
  /// Signed kernel argument a = rho r s / (1 - rho^2).
  double scaled() const;
};

/// Three consecutive arcs of a circle with angles summing to 2 pi.
struct ArcPartition {
  std::array<double, 3> theta;

  /// Equal 2pi/3 arcs.
  ArcPartition();
  /// Validates the angles; negatives above -1e-12 (rounding) are clamped to 0.
  ArcPartition(double t1, double t2, double t3);

  /// sum_i (theta_i / 2pi - 1/3)^2
  double imbalance() const;
};

/// lambda_0..lambda_D of the circle kernel exp(a cos(u - v)). For a < 0 the
/// entries carry the sign (-1)^d.
struct EigenvalueSequence {
  double a = 0.0;
  int depth = 0;
  std::vector<double> values;
  /// Upper bound on sum_{d > depth} |lambda_d| / d^2.
  double tail_bound = 0.0;

  double operator[](int d) const { return values[static_cast<std::size_t>(d)]; }
};

struct Envelope {
  double lower;
  double upper;
};

/// Normalized kernel g(t) = e^{a t} / I_0(a); its mean over the circle is 1.
double kernel_g(const SphericalKernelParams& params, double t);

EigenvalueSequence lambda_sequence(double a, int depth = kDefaultDepth);
EigenvalueSequence lambda_sequence(const SphericalKernelParams& params, int depth = kDefaultDepth);

/// Product envelopes for lambda_d built from integer-shift ratio bounds.
Envelope lambda_envelope_integer_shift(double a, int d);
/// Product envelopes for lambda_d built from half-integer-shift ratio bounds.
Envelope lambda_envelope_half_shift(double a, int d);
/// Tightest combination of the two envelopes. Requires rho > 0.
Envelope lambda_bounds(const SphericalKernelParams& params, int d);
Envelope lambda_bounds(double a, int d);

/// F(theta) = (2/pi^2) sum_d lambda_d sin^2(theta d / 2) / d^2, i.e. the
/// kernel-weighted self-correlation of an arc of length theta minus its
/// squared mean. The tail bound is reported as uncertainty.
Estimate arc_F(const EigenvalueSequence& seq, double theta);
Estimate arc_F(const SphericalKernelParams& params, double theta, int depth = kDefaultDepth);

/// Direct evaluation of F from its double-integral definition.
double arc_F_quadrature(double a, double theta, Tolerance tol = {1e-12, 1e-12});
double arc_F_quadrature(const SphericalKernelParams& params, double theta, Tolerance tol = {1e-12, 1e-12});

/// F'(theta) from the one-dimensional integral of the kernel.
double arc_F_derivative(double a, double theta);
double arc_F_derivative(const SphericalKernelParams& params, double theta);

/// -3 F(2pi/3) + sum_i F(theta_i).
Estimate arc_deficit(const EigenvalueSequence& seq, const ArcPartition& partition);
Estimate arc_deficit(const SphericalKernelParams& params, const ArcPartition& partition,
                     int depth = kDefaultDepth);

/// 2 int_{-t}^{t} e^{a sin b} db / int_0^{2pi} e^{a cos b} db.
double sine_window_ratio(double a, double t);

}  // namespace nsl
