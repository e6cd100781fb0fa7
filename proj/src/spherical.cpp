#include "nsl/spherical.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nsl/errors.hpp"
#include "nsl/special_functions.hpp"

namespace nsl {
namespace {

constexpr double kTwoPi = 2.0 * kPi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_planar(const SphericalKernelParams& p) {
  p.validate();
  if (p.n != 2) {
    throw UnsupportedDimensionError("spherical kernel: only n = 2 is supported (got n=" + std::to_string(p.n) +
                                    ")");
  }
}

void require_angle(double theta) {
  if (!(theta >= -1e-12 && theta <= kTwoPi + 1e-12)) {
    throw DomainError("arc angle must lie in [0, 2pi], got " + std::to_string(theta));
  }
}

// Circle integral of exp(a cos t - |a|), i.e. 2 pi e^{-|a|} I_0(a).
double circle_mass_scaled(double a) { return kTwoPi * bessel_i(0.0, std::fabs(a), true); }

}  // namespace

void SphericalKernelParams::validate() const {
  if (!(rho > -1.0 && rho < 1.0)) throw DomainError("rho must lie in (-1, 1), got " + std::to_string(rho));
  if (!(r > 0.0) || !(s > 0.0) || !std::isfinite(r) || !std::isfinite(s)) {
    throw DomainError("radii must be positive and finite");
  }
  if (n < 2) throw DomainError("dimension must be at least 2");
}

double SphericalKernelParams::scaled() const { return rho * r * s / (1.0 - rho * rho); }

ArcPartition::ArcPartition() : theta{kTwoPi / 3.0, kTwoPi / 3.0, kTwoPi / 3.0} {}

ArcPartition::ArcPartition(double t1, double t2, double t3) : theta{t1, t2, t3} {
  for (double& t : theta) {
    if (!std::isfinite(t) || t < -1e-12) throw DomainError("arc angles must be non-negative");
    if (t < 0.0) t = 0.0;
  }
  const double total = theta[0] + theta[1] + theta[2];
  if (std::fabs(total - kTwoPi) > 1e-12) {
    throw DomainError("arc angles must sum to 2pi (sum=" + std::to_string(total) + ")");
  }
}

double ArcPartition::imbalance() const {
  double p = 0.0;
  for (double t : theta) {
    const double d = t / kTwoPi - 1.0 / 3.0;
    p += d * d;
  }
  return p;
}

double kernel_g(const SphericalKernelParams& params, double t) {
  require_planar(params);
  if (!(t >= -1.0 && t <= 1.0)) throw DomainError("kernel_g: t must lie in [-1, 1]");
  const double a = params.scaled();
  return std::exp(a * t - std::fabs(a)) / bessel_i(0.0, std::fabs(a), true);
}

Envelope lambda_envelope_integer_shift(double a, int d) {
  if (d < 1) throw DomainError("envelope degree must be >= 1");
  Envelope e{1.0, 1.0};
  for (int j = 0; j < d; ++j) {
    const RatioBounds b = ratio_bounds_integer_shift(j, a);
    e.lower *= b.lower;
    e.upper *= b.upper;
  }
  return e;
}

Envelope lambda_envelope_half_shift(double a, int d) {
  if (d < 1) throw DomainError("envelope degree must be >= 1");
  Envelope e{1.0, 1.0};
  for (int j = 0; j < d; ++j) {
    const RatioBounds b = ratio_bounds_half_shift(j, a);
    e.lower *= b.lower;
    e.upper *= b.upper;
  }
  return e;
}

Envelope lambda_bounds(double a, int d) {
  if (!(a > 0.0)) throw RegimeError("eigenvalue envelopes are stated for positive correlation only");
  const Envelope x = lambda_envelope_integer_shift(a, d);
  const Envelope y = lambda_envelope_half_shift(a, d);
  return {std::max(x.lower, y.lower), std::min(x.upper, y.upper)};
}

Envelope lambda_bounds(const SphericalKernelParams& params, int d) {
  require_planar(params);
  if (!(params.rho > 0.0)) throw RegimeError("eigenvalue envelopes are stated for rho in (0, 1)");
  return lambda_bounds(params.scaled(), d);
}

EigenvalueSequence lambda_sequence(double a, int depth) {
  if (depth < 1) throw DomainError("truncation depth must be >= 1");
  if (!std::isfinite(a)) throw DomainError("kernel argument must be finite");
  EigenvalueSequence seq;
  seq.a = a;
  seq.depth = depth;
  seq.values.assign(static_cast<std::size_t>(depth) + 1, 0.0);
  seq.values[0] = 1.0;
  const double x = std::fabs(a);
  const double sign = a < 0.0 ? -1.0 : 1.0;
  for (int d = 1; d <= depth; ++d) {
    seq.values[d] = seq.values[d - 1] * sign * bessel_ratio(d - 1, x);
  }
  // sum_{d > D} |lambda_d| / d^2 <= lambda_{D+1} * sum_{d > D} 1/d^2 < lambda_{D+1} / D
  seq.tail_bound = (x == 0.0) ? 0.0 : lambda_bounds(x, depth + 1).upper / depth;
  return seq;
}

EigenvalueSequence lambda_sequence(const SphericalKernelParams& params, int depth) {
  require_planar(params);
  return lambda_sequence(params.scaled(), depth);
}

Estimate arc_F(const EigenvalueSequence& seq, double theta) {
  require_angle(theta);
  double sum = 0.0;
  for (int d = 1; d <= seq.depth; ++d) {
    const double s = std::sin(0.5 * theta * d);
    sum += seq[d] * s * s / (static_cast<double>(d) * d);
  }
  const double c = 2.0 / (kPi * kPi);
  return {c * sum, c * seq.tail_bound + 4.0 * seq.depth * kEps * std::fabs(c * sum)};
}

Estimate arc_F(const SphericalKernelParams& params, double theta, int depth) {
  return arc_F(lambda_sequence(params, depth), theta);
}

double arc_F_quadrature(double a, double theta, Tolerance tol) {
  require_angle(theta);
  if (theta <= 0.0) return 0.0;
  const double shift = std::fabs(a);
  auto kernel = [a, shift](double u, double v) { return std::exp(a * std::cos(u - v) - shift); };
  const double num = integrate_rectangle(kernel, 0.0, theta, 0.0, theta, {}, {}, tol).value;
  const double mass = integrate([a, shift](double t) { return std::exp(a * std::cos(t) - shift); }, 0.0, kTwoPi,
                                tol)
                          .value;
  const double mean = theta / kTwoPi;
  return num / (kTwoPi * mass) - mean * mean;
}

double arc_F_quadrature(const SphericalKernelParams& params, double theta, Tolerance tol) {
  require_planar(params);
  return arc_F_quadrature(params.scaled(), theta, tol);
}

double arc_F_derivative(double a, double theta) {
  require_angle(theta);
  if (theta <= 0.0) return 0.0;
  const double shift = std::fabs(a);
  const double num =
      integrate([a, shift](double b) { return std::exp(a * std::cos(b) - shift); }, 0.0, theta, Tolerance{1e-14, 1e-14})
          .value;
  return 2.0 * num / (kTwoPi * circle_mass_scaled(a)) - theta / (2.0 * kPi * kPi);
}

double arc_F_derivative(const SphericalKernelParams& params, double theta) {
  require_planar(params);
  return arc_F_derivative(params.scaled(), theta);
}

Estimate arc_deficit(const EigenvalueSequence& seq, const ArcPartition& partition) {
  const Estimate equal = arc_F(seq, kTwoPi / 3.0);
  Estimate out{-3.0 * equal.value, 3.0 * equal.uncertainty};
  for (double t : partition.theta) {
    const Estimate f = arc_F(seq, t);
    out.value += f.value;
    out.uncertainty += f.uncertainty;
  }
  return out;
}

Estimate arc_deficit(const SphericalKernelParams& params, const ArcPartition& partition, int depth) {
  return arc_deficit(lambda_sequence(params, depth), partition);
}

double sine_window_ratio(double a, double t) {
  if (!(t >= 0.0)) throw DomainError("sine_window_ratio: t must be non-negative");
  const double shift = std::fabs(a);
  const double num =
      integrate([a, shift](double b) { return std::exp(a * std::sin(b) - shift); }, -t, t, Tolerance{1e-14, 1e-13}).value;
  return 2.0 * num / circle_mass_scaled(a);
}

}  // namespace nsl
