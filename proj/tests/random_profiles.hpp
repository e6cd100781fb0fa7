#pragma once

// Seeded random radial arc profiles shared by the unit and acceptance tests.

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "nsl/gaussian.hpp"
#include "nsl/rng.hpp"

namespace testing {

inline std::vector<double> gaussian_radial_weights(const nsl::RadialPartitionProfile& p) {
  std::vector<double> gw(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double r = p.radii()[k];
    gw[k] = p.weights()[k] * r * std::exp(-r * r / 2.0);
  }
  return gw;
}

// Arc angles 2pi/3 + dl(r), with dl a bounded smooth perturbation built from
// four cosine modes in r, centered so each row sums to 2pi. With `balanced`
// the columns are shifted so the three sets have equal Gaussian measure.
inline nsl::RadialPartitionProfile random_profile(std::uint64_t seed, bool balanced, double amp) {
  const nsl::RadialPartitionProfile grid = nsl::RadialPartitionProfile::sectors();
  const std::size_t m = grid.size();
  const double r_max = grid.r_max();
  const std::vector<double> gw = gaussian_radial_weights(grid);
  for (std::uint64_t attempt = 0;; ++attempt) {
    nsl::SampleStream rng(seed, attempt);
    double coef[4][3], off[4];
    for (auto& row : coef) {
      for (double& c : row) c = rng.normal();
    }
    for (double& c : off) c = rng.normal();
    std::vector<std::array<double, 3>> dl(m);
    std::vector<double> offsets(m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
      const double t = grid.radii()[k] / r_max;
      for (int j = 0; j < 4; ++j) {
        const double b = std::cos(j * nsl::kPi * t);
        for (int i = 0; i < 3; ++i) dl[k][i] += b * coef[j][i] * amp / 2.0;
        offsets[k] += b * off[j] * 0.5;
      }
      double mean = 0.0;
      for (double& v : dl[k]) {
        v = std::tanh(v) * amp;
        mean += v / 3.0;
      }
      for (double& v : dl[k]) v -= mean;
    }
    if (balanced) {
      double total = 0.0;
      std::array<double, 3> shift{0.0, 0.0, 0.0};
      for (std::size_t k = 0; k < m; ++k) {
        total += gw[k];
        for (int i = 0; i < 3; ++i) shift[i] += gw[k] * dl[k][i];
      }
      for (auto& row : dl) {
        for (int i = 0; i < 3; ++i) row[i] -= shift[i] / total;
      }
    }
    std::vector<nsl::ArcSection> sections(m);
    bool ok = true;
    for (std::size_t k = 0; k < m && ok; ++k) {
      const double a = 2 * nsl::kPi / 3 + dl[k][0], b = 2 * nsl::kPi / 3 + dl[k][1];
      const double c = 2 * nsl::kPi - a - b;
      if (a <= 0 || b <= 0 || c <= 0) {
        ok = false;
        break;
      }
      sections[k].arcs = nsl::ArcPartition(a, b, c);
      sections[k].offset = offsets[k];
    }
    if (ok) return nsl::RadialPartitionProfile(grid.radii(), grid.weights(), sections, r_max);
  }
}

// Right side of the radial stability inequality at positive rho: the
// coefficient 2.5(rho + rho^2) - .109 times E_R(1 - e^{-R rho/2}) sum (c_i - 1/3)^2.
inline double two10_bound(double rho, const nsl::RadialPartitionProfile& p) {
  return (2.5 * (rho + rho * rho) - 0.109) * nsl::penalty_functional(rho, p) * 2.0 / 3.0;
}

// Right side of the antipodal bilinear inequality for |rho|.
inline double eight1_bound(double rho, const nsl::RadialPartitionProfile& p) {
  const std::vector<double> gw = gaussian_radial_weights(p);
  const auto meas = p.gaussian_measures();
  double rhs = 0.0;
  for (double v : meas) rhs += (v - 1.0 / 3.0) * (v - 1.0 / 3.0);
  const double k = 1.0 - rho * rho;
  const double bracket = 0.3759 - 0.3 - 0.645 * rho - 2.5 * rho - 4.0 * rho * rho;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double r = p.radii()[i];
    const double phi = rho / k * r * std::exp(-(1.1 * rho * r) * (1.1 * rho * r) / k - 1.1 * rho * r / k);
    double dev = 0.0;
    for (double t : p.sections()[i].arcs.theta) {
      const double c = t / (2 * nsl::kPi) - 1.0 / 3.0;
      dev += c * c;
    }
    rhs += gw[i] * phi * 2.0 * dev * bracket;
  }
  return rhs;
}

}  // namespace testing
