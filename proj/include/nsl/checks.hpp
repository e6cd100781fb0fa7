#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace nsl {

/// One grid axis. Points are min + i (max - min) / (count - 1), or
/// geometrically spaced when `log` is set.
struct GridAxis {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  int count = 2;
  bool log = false;

  void validate() const;
  std::vector<double> points() const;
  /// Parses "name:min:max:count"; throws ParseError.
  static GridAxis parse(const std::string& text);
};

struct GridSpec {
  std::vector<GridAxis> axes;
  /// Number of points actually visited (after any domain mask).
  std::size_t total_points = 0;
};

struct NamedValue {
  std::string name;
  double value = 0.0;
};

/// Outcome of one numerical verification. `passed` holds exactly when no
/// evaluated point violates the inequality and min_margin > 0; points where
/// both sides vanish identically are counted in `excluded`.
struct CheckReport {
  std::string name;
  std::string statement;
  std::vector<NamedValue> params;
  GridSpec grid;
  double min_margin = std::numeric_limits<double>::infinity();
  std::vector<NamedValue> argmin;
  bool passed = false;
  std::size_t evaluated = 0;
  std::size_t violations = 0;
  std::size_t excluded = 0;
  /// Estimated floating-point or quadrature error of the margin at argmin.
  double uncertainty = 0.0;
  double runtime_seconds = 0.0;
  std::vector<NamedValue> details;
  std::vector<std::string> notes;
  std::vector<std::string> warnings;

  double detail(const std::string& key) const;
};

/// Matlab linspace(a, b, n): equally spaced with both endpoints exact.
std::vector<double> matlab_linspace(double a, double b, int n);

// ----------------------------------------------------------------------------
// Replicas of the published Matlab listings.

struct Two8Options {
  double rho = 0.1;
  double constant = 0.109;
  int count = 10000;
  double r_max = 150.0;
};
/// y(r) >= c (1 - e^{-r rho/2}) on r in linspace(0, r_max, count), where y
/// is the bracketed lower bound built from the two sector exponentials.
CheckReport check_two8(const Two8Options& options = {});

struct Rk1compOptions {
  std::vector<double> a{0.01};
  int numpts = 100;
  double constant = 0.3;
  int depth = 30;
};
/// zv + c p I_1(a)/I_0(a) <= 0 on the simplex grid, with zv the truncated
/// arc deficit and p the squared imbalance.
CheckReport check_rk1comp(const Rk1compOptions& options = {});

struct LastlemOptions {
  int numpts = 200;
  double constant = 4.715;
  double outer_constant = 0.9555;
};
/// sum (sin(theta_i/2) - sqrt(3)/2)^2 <= c sum (theta_i/2pi - 1/3)^2 on the
/// simplex grid, together with outer_constant >= 2c/pi^2.
CheckReport check_lastlem(const LastlemOptions& options = {});

enum class Convbd2Method { box, radial };

struct Convbd2Options {
  double rho = 0.05;
  int count = 1000;
  double r_max = 10.0;
  double box = 10.0;
  double factor = 1.2;
  Convbd2Method method = Convbd2Method::box;
};
/// T_rho f(r, 0) >= 1.2 (rho r/(1-rho^2)) e^{-(1.1 rho r)^2/(1-rho^2) - 1.1 rho r/(1-rho^2)}
/// with f(x) = (rho r |x|/(1-rho^2)) e^{-rho r |x|/(1-rho^2)}.
CheckReport check_convbd2(const Convbd2Options& options = {});

struct NegLinearOptions {
  std::vector<double> a{0.1, 1.0, 10.0, 50.0};
  int numpts = 140;
  double divisor = 125.3;
  int depth = 30;
};
/// No grid point with 0 < zv < con sum (theta_i - 2pi/3)^2, con = a e^{-a}/divisor,
/// where zv is the deficit of the sign-carrying negative-correlation series.
CheckReport check_neg_linear(const NegLinearOptions& options = {});

// ----------------------------------------------------------------------------
// Scalar inequalities closing the constant chains.

struct Lemma28Options {
  GridAxis rho{"rho", 0.005, 0.14, 28};
  double alpha = -0.5;
  double constant = 2.5;
};
/// Closed-form three-term sum (alpha = -1/2) <= c (rho + rho^2).
CheckReport check_lemma28_constant(const Lemma28Options& options = {});

/// The three-term closed form and its defining one-dimensional integral.
double lemma28_closed_form(double rho, double alpha = -0.5);
double lemma28_integral(double rho, double alpha = -0.5);

struct Lemma29Options {
  GridAxis rho{"rho", 0.002, 0.098, 49};
};
/// Bracketed Gaussian-tail expression <= 5 rho + 8 rho^2, for both the
/// displayed exponent sign and the sign that 1/phi actually produces.
CheckReport check_lemma29_constant(const Lemma29Options& options = {});

/// (1/rho) int_0^inf e^{s((1.1 rho r)^2 + 1.1 rho r)/k} [e^{-r^2(1/2 - rho + rho^2/2)/k}
///   - k (1 + rho r^2) e^{-r^2/2}] dr with k = 1 - rho^2 and s = -1 (displayed) or +1.
double lemma29_integral(double rho, int exponent_sign);
/// Exact Gaussian-tail evaluation of the displayed (s = -1) integral.
double lemma29_gaussian_tail_form(double rho);
/// The printed closed form transcribed term by term.
double lemma29_printed_form(double rho);

struct Lemma29zOptions {
  GridAxis rho{"rho", 0.0005, 0.0275, 55};
};
/// Odd-mode bound: main term <= 2.5 rho + sqrt(pi/2), alpha term >=
/// (sqrt(pi/2) + 2.3 rho)/2 and their difference <= sqrt(pi/2)/2 + 1.35 rho.
CheckReport check_lemma29z_constant(const Lemma29zOptions& options = {});

double lemma29z_main(double rho);
/// The alpha term with prefactor (1 - rho) (printed) or (1 - rho^2) (the
/// reciprocal of the lemma's phi).
double lemma29z_alpha(double rho, bool printed_prefactor);

struct Cor1Options {
  GridAxis x{"x", 1e-4, 100.0, 100000};
};
/// -x/(1/2 + sqrt(9/4 + x^2)) <= (3/4)(-1 + (1 - 3^{4/3}/5) e^{-x pi/2} + (3^{4/3}/5) e^{-x pi/6}).
CheckReport check_cor1_scalar(const Cor1Options& options = {});

struct Lemma10Options {
  std::vector<double> a{0.1, 1.0, 10.0};
  int numpts = 60;
  int depth = 60;
};
/// Arc deficit <= -(13/(9 pi^2)) lambda_1 sum (theta_i/2pi - 1/3)^2 whenever theta_1 >= pi.
CheckReport check_lemma10_conclusion(const Lemma10Options& options = {});

struct Lemma7Options {
  std::vector<double> a{0.01, 0.1, 1.0, 5.0, 10.0, 30.0};
  int numpts = 140;
  int depth = 60;
  double constant = 0.158;
};
/// Arc deficit <= c (-1 + (1 - 3^{4/3}/5) e^{-a pi/2} + (3^{4/3}/5) e^{-a pi/6}) p
/// for partitions with every theta_i <= pi; p is the squared imbalance.
CheckReport check_lemma7(const Lemma7Options& options = {});

struct Three1Options {
  GridAxis a{"a", 1e-3, 100.0, 400, true};
  int depth = 400;
};
/// (9/(2 pi^2)) sum_{3 !| d} lambda_d/d^2 > (4/pi^2) sum_{d odd} lambda_d/d^2.
CheckReport check_three1(const Three1Options& options = {});

struct Lemma5Options {
  std::vector<double> a{0.1, 1.0, 10.0};
  int numpts = 40;
};
/// F'(theta_1) - F'(theta_2) < 0 and the exponential refinement when
/// theta_1 - theta_2 <= pi, for theta_1 > theta_2 > 0, pi <= theta_1 + theta_2 <= 2 pi.
CheckReport check_lemma5(const Lemma5Options& options = {});

struct Lemma6Options {
  std::vector<double> a{0.01, 0.1, 1.0, 10.0};
  int numpts = 200;
};
/// 2 int_{-t}^{t} e^{a sin b} db / int_0^{2pi} e^{a cos b} db < 2t/pi for 0 < t < pi/2.
CheckReport check_lemma6(const Lemma6Options& options = {});

struct RatioBoundOptions {
  std::vector<double> order{0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0};
  GridAxis a{"a", 1e-3, 1e3, 400, true};
  /// Relative rounding allowance; the wide-shift upper bound is tight to
  /// machine precision for large arguments.
  double slack = 1e-12;
};
/// All three Bessel-ratio brackets hold at every (order, a).
CheckReport check_ratio_bounds(const RatioBoundOptions& options = {});

}  // namespace nsl
