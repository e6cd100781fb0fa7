#include "nsl/hardness.hpp"

#include <chrono>
#include <cmath>

#include "nsl/errors.hpp"
#include "nsl/gaussian.hpp"
#include "nsl/special_functions.hpp"

namespace nsl {

double alpha2_objective(double rho) {
  if (!(rho >= -1.0 && rho < 1.0)) throw DomainError("alpha2 objective needs rho in [-1, 1)");
  return 2.0 / kPi * std::acos(rho) / (1.0 - rho);
}

double three_cut_objective(double rho) {
  if (!(rho >= -0.5 && rho < 1.0)) throw DomainError("three-cut objective needs rho in [-1/2, 1)");
  return 1.5 * (1.0 - cone_partition_stability(rho).value) / (1.0 - rho);
}

ObjectiveCurve alpha2_curve() { return {"alpha2", -1.0, 1.0, alpha2_objective}; }
ObjectiveCurve alpha3_curve() { return {"alpha3", -0.5, 1.0, three_cut_objective}; }
ObjectiveCurve beta3_curve(double rho_lower) {
  if (!(rho_lower >= -0.5 && rho_lower < 0.0)) throw DomainError("beta3 lower endpoint must lie in [-1/2, 0)");
  return {"beta3", rho_lower, 0.0, three_cut_objective};
}

ConstantResult minimize_curve(const ObjectiveCurve& curve, int grid_points, double xtol) {
  const auto start = std::chrono::steady_clock::now();
  if (grid_points < 3) throw GridError("minimization grid needs at least 3 points");
  auto f = [&](double x) { return curve.eval(x >= 1.0 ? kRhoOneProxy : x); };
  const double step = (curve.hi - curve.lo) / (grid_points - 1);
  auto node = [&](int i) { return i == grid_points - 1 ? curve.hi : curve.lo + i * step; };
  int best = 0;
  double best_value = f(node(0));
  for (int i = 1; i < grid_points; ++i) {
    const double v = f(node(i));
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  double a = node(std::max(best - 1, 0));
  double b = node(std::min(best + 1, grid_points - 1));
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > xtol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  ConstantResult out;
  out.name = curve.name;
  out.lo = curve.lo;
  out.hi = curve.hi;
  out.tolerance = b - a;
  out.argmin = 0.5 * (a + b);
  out.value = f(out.argmin);
  // Golden section only approaches an endpoint minimum; compare against it directly.
  for (double x : {curve.lo, curve.hi}) {
    const double v = f(x);
    if (v <= out.value && std::fabs(x - out.argmin) < 4.0 * step) {
      out.value = v;
      out.argmin = x;
    }
  }
  out.attained_at_endpoint = out.argmin == curve.lo || out.argmin == curve.hi;
  out.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

ConstantResult alpha2() {
  ConstantResult r = minimize_curve(alpha2_curve());
  r.details.push_back({"objective_at_0", alpha2_objective(0.0)});
  return r;
}

ConstantResult alpha3() {
  ConstantResult r = minimize_curve(alpha3_curve());
  r.details.push_back({"objective_at_rho_one_proxy", three_cut_objective(kRhoOneProxy)});
  r.details.push_back({"objective_at_minus_half", three_cut_objective(-0.5)});
  return r;
}

ConstantResult beta3(double rho_lower) {
  const auto start = std::chrono::steady_clock::now();
  const ObjectiveCurve curve = beta3_curve(rho_lower);
  ConstantResult r = minimize_curve(curve);
  r.conditional = true;
  r.monotone = true;
  double previous = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 1000; ++i) {
    const double x = curve.lo + (curve.hi - curve.lo) * i / 999.0;
    const double v = curve.eval(x);
    if (!(v > previous)) r.monotone = false;
    previous = v;
  }
  r.details.push_back({"objective_at_0", three_cut_objective(0.0)});
  r.details.push_back({"objective_at_lower_endpoint", three_cut_objective(rho_lower)});
  r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

double three_cut_objective_inverse(double target, double lo, double hi) {
  double flo = three_cut_objective(lo) - target;
  const double fhi = three_cut_objective(hi) - target;
  if (flo * fhi > 0.0) throw DomainError("target value is not bracketed on the interval");
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = three_cut_objective(mid) - target;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double majority_limit(double rho) {
  if (!(rho > -1.0 && rho < 1.0)) throw DomainError("majority_limit needs rho in (-1, 1)");
  return 1.0 - 2.0 / kPi * std::acos(rho);
}

double plurality_limit(double rho) {
  if (!(rho > -0.5 && rho < 1.0)) throw DomainError("plurality_limit needs rho in (-1/2, 1)");
  return cone_partition_stability(rho).value;
}

}  // namespace nsl
