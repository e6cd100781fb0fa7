#pragma once

#include <string>

#include <json.hpp>

#include "nsl/gaussian.hpp"

namespace nsl {

/// Profile document:
///   {"radii": [r_1, ...], "theta": [[t1, t2, t3], ...], "offset": [o_1, ...],
///    "weights": [w_1, ...], "r_max": 8.0}
/// `weights` and `r_max` are optional; missing weights default to
/// RadialPartitionProfile::cell_weights and r_max to max(8, last radius).
/// Malformed documents raise ParseError naming the offending field.
RadialPartitionProfile profile_from_json(const nlohmann::json& doc);
nlohmann::json profile_to_json(const RadialPartitionProfile& profile);

/// Reads a profile file; parse failures report the file name and location.
RadialPartitionProfile load_profile(const std::string& path);

}  // namespace nsl
