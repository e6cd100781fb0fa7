#include "nsl/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nsl/errors.hpp"
#include "nsl/parallel.hpp"
#include "nsl/rng.hpp"
#include "nsl/special_functions.hpp"

namespace nsl {
namespace {

constexpr double kTwoPi = 2.0 * kPi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_open_correlation(double rho) {
  if (!(std::fabs(rho) < 1.0)) throw DomainError("correlation must lie in (-1, 1)");
}

void require_closed_correlation(double rho) {
  if (!(std::fabs(rho) <= 1.0)) throw DomainError("correlation must lie in [-1, 1]");
}

void require_finite(const PlanePoint& p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw DomainError("plane point must be finite");
}

double wrap_angle(double angle) {
  double t = std::fmod(angle, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t;
}

// Per-node Fourier data of a profile: for node k, arc i and frequency d
// (1-based), sin(d theta/2), cos(d m) and sin(d m) with m the arc midpoint.
struct ModeTable {
  std::size_t depth = 0;
  std::vector<double> mean;  // [k][i]
  std::vector<double> half_sine;
  std::vector<double> cos_mid;
  std::vector<double> sin_mid;

  std::size_t at(std::size_t k, std::size_t i, std::size_t d) const { return ((k * 3 + i) * depth) + (d - 1); }
};

ModeTable build_modes(const RadialPartitionProfile& profile, int depth) {
  ModeTable t;
  t.depth = static_cast<std::size_t>(depth);
  const std::size_t m = profile.size();
  t.mean.resize(m * 3);
  t.half_sine.resize(m * 3 * t.depth);
  t.cos_mid.resize(m * 3 * t.depth);
  t.sin_mid.resize(m * 3 * t.depth);
  for (std::size_t k = 0; k < m; ++k) {
    const ArcSection& sec = profile.sections()[k];
    for (std::size_t i = 0; i < 3; ++i) {
      const double theta = sec.arcs.theta[i];
      const double mid = sec.midpoint(static_cast<int>(i));
      t.mean[k * 3 + i] = theta / kTwoPi;
      for (std::size_t d = 1; d <= t.depth; ++d) {
        const double dd = static_cast<double>(d);
        t.half_sine[t.at(k, i, d)] = std::sin(0.5 * dd * theta);
        t.cos_mid[t.at(k, i, d)] = std::cos(dd * mid);
        t.sin_mid[t.at(k, i, d)] = std::sin(dd * mid);
      }
    }
  }
  return t;
}

void validate_profile_pair(const RadialPartitionProfile& a, const RadialPartitionProfile& b) {
  if (!a.same_grid(b)) throw GridError("profiles use different radial grids");
  if (a.size() < kMinRadialNodes) {
    throw ResolutionError("radial grid has " + std::to_string(a.size()) + " nodes; at least " +
                          std::to_string(kMinRadialNodes) + " are required");
  }
}

}  // namespace

double PlanePoint::norm() const { return std::hypot(x, y); }

double PlanePoint::dot(const PlanePoint& other) const { return x * other.x + y * other.y; }

double gamma2(const PlanePoint& p) { return std::exp(-0.5 * (p.x * p.x + p.y * p.y)) / kTwoPi; }

double mehler_kernel(double rho, const PlanePoint& x, const PlanePoint& y) {
  require_open_correlation(rho);
  require_finite(x);
  require_finite(y);
  const double k = 1.0 - rho * rho;
  const double xx = x.dot(x);
  const double yy = y.dot(y);
  const double exponent = (-xx - yy + 2.0 * rho * x.dot(y)) / (2.0 * k);
  return std::exp(exponent) / (kTwoPi * kTwoPi * k);
}

double mehler_hermite_expansion(double rho, const PlanePoint& x, const PlanePoint& y, int degree) {
  require_open_correlation(rho);
  if (degree < 0 || degree > kHermiteMaxDegree) {
    throw UnsupportedDegreeError("Hermite expansion degree must lie in [0, " + std::to_string(kHermiteMaxDegree) +
                                 "]");
  }
  std::vector<double> first(static_cast<std::size_t>(degree) + 1);
  std::vector<double> second(static_cast<std::size_t>(degree) + 1);
  double factorial = 1.0;
  for (int m = 0; m <= degree; ++m) {
    if (m > 0) factorial *= m;
    first[m] = hermite(m, x.x) * hermite(m, y.x) * factorial;
    second[m] = hermite(m, x.y) * hermite(m, y.y) * factorial;
  }
  double sum = 0.0;
  double power = 1.0;
  for (int d = 0; d <= degree; ++d) {
    double level = 0.0;
    for (int j = 0; j <= d; ++j) level += first[j] * second[d - j];
    sum += power * level;
    power *= rho;
  }
  return sum * gamma2(x) * gamma2(y);
}

double ou_apply(double rho, const PlaneFunction& f, const PlanePoint& x, const OuOptions& options) {
  require_closed_correlation(rho);
  require_finite(x);
  const double spread = std::sqrt(std::max(0.0, 1.0 - rho * rho));
  const PlanePoint centre{rho * x.x, rho * x.y};
  if (spread == 0.0) return f(centre);

  if (options.method == OuMethod::adaptive) {
    auto integrand = [&](double u, double v) {
      return f(PlanePoint{centre.x + spread * u, centre.y + spread * v}) * gamma2(PlanePoint{u, v});
    };
    return integrate_rectangle(integrand, -options.box, options.box, -options.box, options.box, {}, {}, options.tol)
        .value;
  }

  const QuadratureRule rule = gauss_hermite_normal(options.nodes);
  // Weight normalization removes the rule's tiny mass defect, so constants
  // are reproduced to rounding.
  double mass = 0.0;
  for (double w : rule.weights) mass += w;
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      row += rule.weights[j] * f(PlanePoint{centre.x + spread * rule.nodes[i], centre.y + spread * rule.nodes[j]});
    }
    sum += rule.weights[i] * row;
  }
  return sum / (mass * mass);
}

double ou_apply_radial(double rho, const std::function<double(double)>& g, double r, Tolerance tol) {
  require_open_correlation(rho);
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("radius must be finite and nonnegative");
  const double k = 1.0 - rho * rho;
  const double shift = std::fabs(rho) * r;
  auto density = [&](double t) {
    const double z = t - shift;
    return g(t) * (t / k) * std::exp(-z * z / (2.0 * k)) * bessel_i(0.0, shift * t / k, true);
  };
  return integrate(density, 0.0, std::numeric_limits<double>::infinity(), tol).value;
}

StabilityValue cone_partition_stability(double rho) {
  require_closed_correlation(rho);
  const double a = std::acos(-rho);
  const double b = std::acos(0.5 * rho);
  return {3.0 * (1.0 / 9.0 + (a * a - b * b) / (4.0 * kPi * kPi)), 0.0};
}

int ArcSection::label_of(double angle) const {
  const double t = wrap_angle(angle - offset);
  if (t < arcs.theta[0]) return 0;
  if (t < arcs.theta[0] + arcs.theta[1]) return 1;
  return 2;
}

double ArcSection::midpoint(int i) const {
  double start = offset;
  for (int j = 0; j < i; ++j) start += arcs.theta[j];
  return start + 0.5 * arcs.theta[i];
}

RadialPartitionProfile::RadialPartitionProfile(std::vector<double> radii, std::vector<double> weights,
                                               std::vector<ArcSection> sections, double r_max)
    : radii_(std::move(radii)), weights_(std::move(weights)), sections_(std::move(sections)), r_max_(r_max) {
  if (radii_.empty()) throw GridError("profile needs at least one radius");
  if (weights_.size() != radii_.size() || sections_.size() != radii_.size()) {
    throw GridError("radii, weights and arc lists must have equal length");
  }
  if (!(r_max_ >= kDefaultRadialCutoff) || !std::isfinite(r_max_)) {
    throw GridError("radial cutoff must be at least " + std::to_string(kDefaultRadialCutoff));
  }
  for (std::size_t k = 0; k < radii_.size(); ++k) {
    if (!(radii_[k] >= 0.0) || radii_[k] > r_max_) throw GridError("radius " + std::to_string(k) + " outside [0, r_max]");
    if (k > 0 && !(radii_[k] > radii_[k - 1])) throw GridError("radii must be strictly increasing");
    if (!(weights_[k] >= 0.0) || !std::isfinite(weights_[k])) throw GridError("weights must be finite and nonnegative");
    if (!std::isfinite(sections_[k].offset)) throw GridError("offsets must be finite");
  }
}

RadialPartitionProfile RadialPartitionProfile::from_shape(const ProfileShape& shape, int nodes, double r_max) {
  const QuadratureRule rule = gauss_legendre(nodes, 0.0, r_max);
  std::vector<ArcSection> sections;
  sections.reserve(rule.nodes.size());
  for (double r : rule.nodes) sections.push_back(shape(r));
  RadialPartitionProfile p(rule.nodes, rule.weights, std::move(sections), r_max);
  p.shape_ = shape;
  return p;
}

RadialPartitionProfile RadialPartitionProfile::sectors(int nodes, double r_max) {
  return from_shape([](double) { return ArcSection{}; }, nodes, r_max);
}

std::vector<double> RadialPartitionProfile::cell_weights(const std::vector<double>& radii, double r_max) {
  std::vector<double> w(radii.size());
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const double lo = k == 0 ? 0.0 : 0.5 * (radii[k - 1] + radii[k]);
    const double hi = k + 1 == radii.size() ? r_max : 0.5 * (radii[k] + radii[k + 1]);
    w[k] = std::max(0.0, hi - lo);
  }
  return w;
}

RadialPartitionProfile RadialPartitionProfile::rotated(double angle) const {
  RadialPartitionProfile p = *this;
  for (auto& s : p.sections_) s.offset += angle;
  p.rotation_ += angle;
  return p;
}

ArcSection RadialPartitionProfile::section_at(double radius) const {
  if (shape_) {
    ArcSection s = shape_(radius);
    s.offset += rotation_;
    return s;
  }
  if (radius <= radii_.front()) return sections_.front();
  if (radius >= radii_.back()) return sections_.back();
  const auto it = std::upper_bound(radii_.begin(), radii_.end(), radius);
  const std::size_t hi = static_cast<std::size_t>(it - radii_.begin());
  const std::size_t lo = hi - 1;
  const double t = (radius - radii_[lo]) / (radii_[hi] - radii_[lo]);
  const ArcSection& a = sections_[lo];
  const ArcSection& b = sections_[hi];
  // Convex combinations of valid angle triples are valid.
  ArcSection s;
  s.arcs = ArcPartition((1 - t) * a.arcs.theta[0] + t * b.arcs.theta[0], (1 - t) * a.arcs.theta[1] + t * b.arcs.theta[1],
                        (1 - t) * a.arcs.theta[2] + t * b.arcs.theta[2]);
  s.offset = (1 - t) * a.offset + t * b.offset;
  return s;
}

std::array<double, 3> RadialPartitionProfile::gaussian_measures() const {
  std::array<double, 3> m{0.0, 0.0, 0.0};
  for (std::size_t k = 0; k < radii_.size(); ++k) {
    const double r = radii_[k];
    const double radial = weights_[k] * r * std::exp(-0.5 * r * r);
    for (std::size_t i = 0; i < 3; ++i) m[i] += radial * sections_[k].arcs.theta[i] / kTwoPi;
  }
  return m;
}

bool RadialPartitionProfile::same_grid(const RadialPartitionProfile& other) const {
  return radii_ == other.radii_ && weights_ == other.weights_ && r_max_ == other.r_max_;
}

BilinearStability bilinear_profile_stability(double rho, const RadialPartitionProfile& a,
                                             const RadialPartitionProfile& b, int depth) {
  require_open_correlation(rho);
  validate_profile_pair(a, b);
  if (depth < 1) throw DomainError("truncation depth must be >= 1");

  const ModeTable ta = build_modes(a, depth);
  const ModeTable tb = build_modes(b, depth);
  const std::size_t m = a.size();
  const auto& r = a.radii();
  const auto& w = a.weights();
  const double k1 = 1.0 - rho * rho;
  const double spectral = 2.0 / (kPi * kPi);

  std::vector<double> row_mass(m), row_q0(m), row_q1(m), row_q2(m), row_trunc(m);
  parallel_for(m, [&](std::size_t k) {
    double mass = 0.0, q0 = 0.0, q1 = 0.0, q2 = 0.0, trunc = 0.0;
    for (std::size_t l = 0; l < m; ++l) {
      const double kappa = rho * r[k] * r[l] / k1;
      const double abs_kappa = std::fabs(kappa);
      const double weight = w[k] * w[l] * r[k] * r[l] / k1 *
                            std::exp(-(r[k] * r[k] + r[l] * r[l]) / (2.0 * k1) + abs_kappa) *
                            bessel_i(0.0, abs_kappa, true);
      if (weight == 0.0) continue;
      const EigenvalueSequence seq = lambda_sequence(kappa, depth);
      double means = 0.0;
      for (std::size_t i = 0; i < 3; ++i) means += ta.mean[k * 3 + i] * tb.mean[l * 3 + i];
      double first = 0.0, higher = 0.0;
      for (std::size_t d = 1; d <= ta.depth; ++d) {
        double modes = 0.0;
        for (std::size_t i = 0; i < 3; ++i) {
          const std::size_t ia = ta.at(k, i, d);
          const std::size_t ib = tb.at(l, i, d);
          modes += ta.half_sine[ia] * tb.half_sine[ib] *
                   (ta.cos_mid[ia] * tb.cos_mid[ib] + ta.sin_mid[ia] * tb.sin_mid[ib]);
        }
        const double dd = static_cast<double>(d);
        const double term = seq[static_cast<int>(d)] * modes / (dd * dd);
        if (d == 1) first = term;
        else higher += term;
      }
      mass += weight;
      q0 += weight * means;
      q1 += weight * spectral * first;
      q2 += weight * spectral * higher;
      trunc += weight * spectral * 3.0 * seq.tail_bound;
    }
    row_mass[k] = mass;
    row_q0[k] = q0;
    row_q1[k] = q1;
    row_q2[k] = q2;
    row_trunc[k] = trunc;
  });

  BilinearStability out;
  out.q0 = pairwise_sum(row_q0);
  out.q1 = pairwise_sum(row_q1);
  out.q2 = pairwise_sum(row_q2);
  const double mass = pairwise_sum(row_mass);
  const double cutoff = a.r_max();
  // P(R > r_max or S > r_max) <= 2 e^{-r_max^2/2}
  const double tail_mass = 2.0 * std::exp(-0.5 * cutoff * cutoff);
  const double rounding = 8.0 * kEps * static_cast<double>(m * m) * (std::fabs(out.q0) + 1.0);
  out.total.value = out.q0 + out.q1 + out.q2;
  out.total.uncertainty = pairwise_sum(row_trunc) + std::fabs(mass - 1.0) + tail_mass + rounding;
  return out;
}

StabilityValue profile_stability(double rho, const RadialPartitionProfile& profile, int depth) {
  return bilinear_profile_stability(rho, profile, profile, depth).total;
}

double penalty_functional(double rho, const RadialPartitionProfile& profile) {
  double sum = 0.0;
  for (std::size_t k = 0; k < profile.size(); ++k) {
    const double r = profile.radii()[k];
    double deficit = 0.0;
    for (double theta : profile.sections()[k].arcs.theta) {
      const double c = theta / kTwoPi - 1.0 / 3.0;
      deficit += c * c;
    }
    sum += profile.weights()[k] * r * (1.0 - std::exp(-0.5 * rho * r)) * std::exp(-0.5 * r * r) * deficit;
  }
  return 1.5 * sum;
}

double tphi_lower_bound(double rho, double r) {
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("tphi_lower_bound requires rho in (0, 1)");
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("radius must be finite and nonnegative");
  const double k = 1.0 - rho * rho;
  const double q = rho * rho * r * r / k;
  // e^{3q/2} P(Z > 2 rho r / sqrt(k)) = e^{-q/2} erfcx(sqrt(2q)) / 2, which
  // avoids the overflow of the first factor.
  const double damp = std::exp(-0.5 * q);
  return 1.0 - 0.5 * damp - 0.5 * damp * erfcx(std::sqrt(2.0 * q));
}

PlaneLabel profile_label(const RadialPartitionProfile& profile) {
  return [profile](const PlanePoint& p) {
    return profile.section_at(p.norm()).label_of(std::atan2(p.y, p.x));
  };
}

McEstimate partition_agreement_mc(double rho, const PlaneLabel& label_a, const PlaneLabel& label_b,
                                  std::uint64_t samples, std::uint64_t seed) {
  require_closed_correlation(rho);
  if (samples == 0) throw DomainError("sample count must be positive");
  const double spread = std::sqrt(std::max(0.0, 1.0 - rho * rho));
  constexpr std::uint64_t kChunk = 1 << 16;
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<std::uint64_t> hits(chunks, 0);
  parallel_for(chunks, [&](std::size_t c) {
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(samples, begin + kChunk);
    std::uint64_t count = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      SampleStream rng(seed, i);
      const PlanePoint x{rng.normal(), rng.normal()};
      const double g1 = rng.normal();
      const double g2 = rng.normal();
      const PlanePoint y{rho * x.x + spread * g1, rho * x.y + spread * g2};
      if (label_a(x) == label_b(y)) ++count;
    }
    hits[c] = count;
  });
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  const double p = static_cast<double>(total) / static_cast<double>(samples);
  return {p, std::sqrt(std::max(p * (1.0 - p), 1e-300) / static_cast<double>(samples)), samples};
}

}  // namespace nsl
