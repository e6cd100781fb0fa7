#pragma once

namespace nsl {

/// A computed value together with an additive bound on its numerical error.
struct Estimate {
  double value = 0.0;
  double uncertainty = 0.0;
};

using StabilityValue = Estimate;

}  // namespace nsl

#include <cstdint>

namespace nsl {

/// Monte Carlo mean with its standard error.
struct McEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
};

}  // namespace nsl
