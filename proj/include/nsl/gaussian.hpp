#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "nsl/estimate.hpp"
#include "nsl/quadrature.hpp"
#include "nsl/special_functions.hpp"
#include "nsl/spherical.hpp"

namespace nsl {

struct PlanePoint {
  double x = 0.0;
  double y = 0.0;

  double norm() const;
  double dot(const PlanePoint& other) const;
};

/// Standard Gaussian density on the plane.
double gamma2(const PlanePoint& p);

/// Joint density G_rho(x, y) of a rho-correlated pair of standard Gaussian
/// vectors in the plane. Requires |rho| < 1.
double mehler_kernel(double rho, const PlanePoint& x, const PlanePoint& y);

/// Truncated Hermite expansion of the same density, keeping total degrees
/// up to `degree` (at most kHermiteMaxDegree).
double mehler_hermite_expansion(double rho, const PlanePoint& x, const PlanePoint& y, int degree);

using PlaneFunction = std::function<double(const PlanePoint&)>;

enum class OuMethod { gauss_hermite, adaptive };

struct OuOptions {
  OuMethod method = OuMethod::gauss_hermite;
  int nodes = 48;        // per axis, tensorized Gauss-Hermite
  double box = 10.0;     // half-width of the integration square for the adaptive method
  Tolerance tol{1e-10, 1e-10};
};

/// Ornstein-Uhlenbeck smoothing T_rho f(x) = E f(rho x + sqrt(1 - rho^2) Y).
double ou_apply(double rho, const PlaneFunction& f, const PlanePoint& x, const OuOptions& options = {});

/// T_rho f at any point of norm r for a radial f(x) = g(|x|), computed as a
/// single integral against the Rice density of |rho x + sqrt(1-rho^2) Y|.
double ou_apply_radial(double rho, const std::function<double(double)>& g, double r,
                       Tolerance tol = {1e-12, 1e-12});

/// Exact stability of the three 120-degree sectors; uncertainty is zero.
StabilityValue cone_partition_stability(double rho);

/// The three arcs cut out on one circle: arcs are laid out consecutively
/// counter-clockwise starting at angle `offset`.
struct ArcSection {
  ArcPartition arcs;
  double offset = 0.0;

  /// Index (0, 1, 2) of the arc containing the given polar angle.
  int label_of(double angle) const;
  /// Polar angle of the midpoint of arc i.
  double midpoint(int i) const;
};

using ProfileShape = std::function<ArcSection(double radius)>;

inline constexpr int kDefaultRadialNodes = 64;
inline constexpr double kDefaultRadialCutoff = 8.0;
inline constexpr std::size_t kMinRadialNodes = 16;

/// A partition of the plane into three sets whose intersection with each
/// circle |x| = r is a triple of consecutive arcs. The radial direction is
/// discretized by a quadrature rule on [0, r_max] for the measure dr.
class RadialPartitionProfile {
 public:
  RadialPartitionProfile(std::vector<double> radii, std::vector<double> weights,
                         std::vector<ArcSection> sections, double r_max = kDefaultRadialCutoff);

  /// Samples `shape` at Gauss-Legendre nodes on [0, r_max]. The shape is kept
  /// so that section_at() is exact between nodes.
  static RadialPartitionProfile from_shape(const ProfileShape& shape, int nodes = kDefaultRadialNodes,
                                           double r_max = kDefaultRadialCutoff);
  /// The three sectors with boundaries at angles 0, 2pi/3, 4pi/3.
  static RadialPartitionProfile sectors(int nodes = kDefaultRadialNodes, double r_max = kDefaultRadialCutoff);

  /// Rule weights for a node list without explicit weights: each node owns
  /// the cell between the midpoints to its neighbours, clipped to [0, r_max].
  static std::vector<double> cell_weights(const std::vector<double>& radii, double r_max);

  /// Same partition rotated by `angle` at every radius.
  RadialPartitionProfile rotated(double angle) const;
  /// Rotation by pi: the sets -Omega_i.
  RadialPartitionProfile antipodal() const { return rotated(kPi); }

  std::size_t size() const { return radii_.size(); }
  const std::vector<double>& radii() const { return radii_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<ArcSection>& sections() const { return sections_; }
  double r_max() const { return r_max_; }

  /// Arcs at an arbitrary radius: the generating shape if known, otherwise
  /// linear interpolation of angles and offsets between nodes.
  ArcSection section_at(double radius) const;

  /// Gaussian measures of the three sets under the radial rule.
  std::array<double, 3> gaussian_measures() const;

  bool same_grid(const RadialPartitionProfile& other) const;

 private:
  std::vector<double> radii_;
  std::vector<double> weights_;
  std::vector<ArcSection> sections_;
  double r_max_;
  ProfileShape shape_;
  double rotation_ = 0.0;
};

/// sum_i int 1_{Omega_i} T_rho 1_{Omega_i} dgamma_2 through the polar
/// decomposition. The uncertainty adds the spectral truncation bound, the
/// deviation of the radial rule from unit mass and the mass beyond r_max.
StabilityValue profile_stability(double rho, const RadialPartitionProfile& profile, int depth = kDefaultDepth);

struct BilinearStability {
  StabilityValue total;
  double q0 = 0.0;  // product of circle means
  double q1 = 0.0;  // first Fourier mode
  double q2 = 0.0;  // modes two and higher
};

/// sum_i int 1_{Omega_i} T_rho 1_{Omega'_i} dgamma_2 for two profiles on the
/// same radial grid, split into the mean part and the Fourier modes.
BilinearStability bilinear_profile_stability(double rho, const RadialPartitionProfile& a,
                                             const RadialPartitionProfile& b, int depth = kDefaultDepth);

/// (3/2) int_0^inf r (1 - e^{-rho r/2}) e^{-r^2/2} sum_i (c_i(r) - 1/3)^2 dr,
/// evaluated with the profile's radial rule.
double penalty_functional(double rho, const RadialPartitionProfile& profile);

/// Lower bound for T_rho phi at |x| = r where phi(x) = 1 - e^{-a|x|} and
/// a = rho r / (1 - rho^2).
double tphi_lower_bound(double rho, double r);

using PlaneLabel = std::function<int(const PlanePoint&)>;

/// Monte Carlo estimate of P(label_a(X) == label_b(Y)) for rho-correlated
/// standard Gaussian vectors X, Y. Deterministic in (seed, samples).
McEstimate partition_agreement_mc(double rho, const PlaneLabel& label_a, const PlaneLabel& label_b,
                                  std::uint64_t samples, std::uint64_t seed);

/// Labels a point by the arcs of the profile at its radius.
PlaneLabel profile_label(const RadialPartitionProfile& profile);

}  // namespace nsl
