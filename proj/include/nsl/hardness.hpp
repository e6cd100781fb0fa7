#pragma once

#include <functional>
#include <string>
#include <vector>

namespace nsl {

/// A one-parameter objective on a closed interval. At rho = 1 the ratios below
/// are 0/0; evaluators are called at kRhoOneProxy instead.
struct ObjectiveCurve {
  std::string name;
  double lo = -1.0;
  double hi = 1.0;
  std::function<double(double)> eval;
};

inline constexpr double kRhoOneProxy = 1.0 - 1e-6;

struct ConstantResult {
  std::string name;
  double value = 0.0;
  double argmin = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  /// Bracket width of the golden-section search at termination.
  double tolerance = 0.0;
  bool attained_at_endpoint = false;
  /// True when the value relies on a theorem reducing a sup over partitions to
  /// the sector partition.
  bool conditional = false;
  /// For beta3: whether the objective is strictly increasing on a 1000-point grid.
  bool monotone = false;
  std::vector<std::pair<std::string, double>> details;
  double runtime_seconds = 0.0;
};

/// (2/pi) arccos(rho) / (1 - rho)
double alpha2_objective(double rho);
/// (3/2)(1 - S(rho)) / (1 - rho) with S the three-sector stability.
double three_cut_objective(double rho);

ObjectiveCurve alpha2_curve();
ObjectiveCurve alpha3_curve();
ObjectiveCurve beta3_curve(double rho_lower = -1.0 / 43.0);

/// Infimum of a curve: a 2001-point bracketing grid followed by golden-section
/// refinement to 1e-12 in rho.
ConstantResult minimize_curve(const ObjectiveCurve& curve, int grid_points = 2001, double xtol = 1e-12);

ConstantResult alpha2();
ConstantResult alpha3();
ConstantResult beta3(double rho_lower = -1.0 / 43.0);

/// Solves three_cut_objective(rho) = target for rho in [lo, hi] by bisection.
double three_cut_objective_inverse(double target, double lo, double hi);

/// 1 - (2/pi) arccos(rho), the limiting stability of majority. rho in (-1, 1).
double majority_limit(double rho);
/// Limiting stability of three-candidate plurality. rho in (-1/2, 1).
double plurality_limit(double rho);

}  // namespace nsl
