#pragma once

namespace nsl {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr int kHermiteMaxDegree = 60;
// Arguments up to this value use the power series directly.
inline constexpr double kBesselSeriesLimit = 30.0;

/// Modified Bessel function of the first kind I_order(x) for order >= 0 and
/// x >= 0. With `scaled` the result is e^{-x} I_order(x), which stays finite
/// for large x. Throws DomainError on negative or non-finite input.
double bessel_i(double order, double x, bool scaled = false);

/// I_{order+1}(x) / I_order(x), evaluated by a continued fraction. The result
/// lies in [0, 1).
double bessel_ratio(double order, double x);

/// h_m(x) = sum_k x^{m-2k} (-1)^k 2^{-k} / (k! (m-2k)!), so that sqrt(m!) h_m
/// is orthonormal for the standard Gaussian. Degree is capped at 60.
double hermite(int m, double x);

/// Upper Gaussian tail: integral of the standard normal density over
/// [lower, inf). Accepts -inf and +inf.
double gaussian_tail(double lower);

/// Scaled complementary error function e^{x^2} erfc(x).
double erfcx(double x);

/// Standard normal density on the line.
double gaussian_density(double t);

}  // namespace nsl

namespace nsl {

struct RatioBounds {
  double lower;
  double upper;
};

/// Bracket x/(v+1+sqrt((v+1)^2+x^2)) <= I_{v+1}/I_v <= x/(v+sqrt(v^2+x^2)).
RatioBounds ratio_bounds_integer_shift(double order, double x);

/// Bracket x/(v+1/2+sqrt((v+3/2)^2+x^2)) <= I_{v+1}/I_v <= x/(v+1/2+sqrt((v+1/2)^2+x^2)).
RatioBounds ratio_bounds_half_shift(double order, double x);

/// Bracket x/(v+1+sqrt((v+1)^2+x^2)) <= I_{v+1}/I_v <= x/(v+sqrt((v+2)^2+x^2)).
RatioBounds ratio_bounds_wide_shift(double order, double x);

}  // namespace nsl
