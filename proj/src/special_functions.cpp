#include "nsl/special_functions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nsl/errors.hpp"

namespace nsl {
namespace {

void require_bessel_domain(double order, double x) {
  if (!std::isfinite(order) || !std::isfinite(x) || order < 0.0 || x < 0.0) {
    throw DomainError("bessel: order and argument must be finite and non-negative (order=" +
                      std::to_string(order) + ", x=" + std::to_string(x) + ")");
  }
}

// Power series sum_m (x/2)^{2m+a} / (m! Gamma(m+a+1)). All terms are positive,
// so there is no cancellation.
double bessel_series(double order, double x) {
  const double half = 0.5 * x;
  double term = std::exp(order * std::log(half) - std::lgamma(order + 1.0));
  const double q = half * half;
  double sum = term;
  for (int m = 1; m < 500; ++m) {
    term *= q / (m * (m + order));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

// e^{-x} I_mu(x) for mu in [0,1) and x > 30 from the Hankel asymptotic series.
// The omitted exponentially small part is O(e^{-2x}).
double bessel_scaled_asymptotic(double mu, double x) {
  const double four_mu2 = 4.0 * mu * mu;
  double term = 1.0;
  double sum = 1.0;
  double previous = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(four_mu2 - odd * odd) / (8.0 * k * x);
    const double mag = std::fabs(term);
    if (mag > previous) break;  // series has started to diverge
    sum += term;
    if (mag < 1e-17 * std::fabs(sum)) break;
    previous = mag;
  }
  return sum / std::sqrt(2.0 * kPi * x);
}

}  // namespace

double bessel_ratio(double order, double x) {
  require_bessel_domain(order, x);
  if (x == 0.0) return 0.0;
  // r_v = 1 / (b_1 + 1 / (b_2 + ...)),  b_k = 2(v+k)/x, by modified Lentz.
  constexpr double tiny = 1e-300;
  double f = tiny;
  double c = f;
  double d = 0.0;
  const long max_iter = 1000 + static_cast<long>(20.0 * x);
  for (long k = 1; k <= max_iter; ++k) {
    const double b = 2.0 * (order + static_cast<double>(k)) / x;
    d = b + d;
    if (d == 0.0) d = tiny;
    c = b + 1.0 / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return f;
}

double bessel_i(double order, double x, bool scaled) {
  require_bessel_domain(order, x);
  if (x == 0.0) return order == 0.0 ? 1.0 : 0.0;
  if (x <= kBesselSeriesLimit) {
    const double v = bessel_series(order, x);
    return scaled ? v * std::exp(-x) : v;
  }
  const double whole = std::floor(order);
  const double mu = order - whole;
  double v = bessel_scaled_asymptotic(mu, x);
  for (int j = 0; j < static_cast<int>(whole); ++j) v *= bessel_ratio(mu + j, x);
  return scaled ? v : v * std::exp(x);
}

double hermite(int m, double x) {
  if (m < 0) throw DomainError("hermite: negative degree " + std::to_string(m));
  if (m > kHermiteMaxDegree) {
    throw UnsupportedDegreeError("hermite: degree " + std::to_string(m) + " exceeds cap " +
                                 std::to_string(kHermiteMaxDegree));
  }
  if (m == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int j = 1; j < m; ++j) {
    const double next = (x * cur - prev) / (j + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

double gaussian_tail(double lower) {
  if (std::isnan(lower)) throw DomainError("gaussian_tail: NaN bound");
  if (lower == -std::numeric_limits<double>::infinity()) return 1.0;
  if (lower == std::numeric_limits<double>::infinity()) return 0.0;
  return 0.5 * std::erfc(lower / std::sqrt(2.0));
}

double erfcx(double x) {
  if (std::isnan(x)) return x;
  if (x < 0.0) return 2.0 * std::exp(x * x) - erfcx(-x);
  if (x < 10.0) return std::exp(x * x) * std::erfc(x);
  // Laplace continued fraction: sqrt(pi) erfcx(x) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))).
  constexpr double tiny = 1e-300;
  double f = x;
  double c = f;
  double d = 0.0;
  for (int k = 1; k < 500; ++k) {
    const double a = 0.5 * k;
    d = x + a * d;
    if (d == 0.0) d = tiny;
    c = x + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return 1.0 / (std::sqrt(kPi) * f);
}

double gaussian_density(double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * kPi); }

}  // namespace nsl

namespace nsl {

RatioBounds ratio_bounds_integer_shift(double v, double x) {
  require_bessel_domain(v, x);
  return {x / (v + 1.0 + std::hypot(v + 1.0, x)), x == 0.0 ? 0.0 : x / (v + std::hypot(v, x))};
}

RatioBounds ratio_bounds_half_shift(double v, double x) {
  require_bessel_domain(v, x);
  return {x / (v + 0.5 + std::hypot(v + 1.5, x)), x / (v + 0.5 + std::hypot(v + 0.5, x))};
}

RatioBounds ratio_bounds_wide_shift(double v, double x) {
  require_bessel_domain(v, x);
  return {x / (v + 1.0 + std::hypot(v + 1.0, x)), x / (v + std::hypot(v + 2.0, x))};
}

}  // namespace nsl
