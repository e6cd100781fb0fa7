#include "nsl/profile_io.hpp"

#include <fstream>

#include "nsl/errors.hpp"

namespace nsl {
namespace {

std::vector<double> number_array(const nlohmann::json& doc, const char* field, bool required) {
  if (!doc.contains(field)) {
    if (required) throw ParseError(std::string("missing field '") + field + "'");
    return {};
  }
  const auto& arr = doc.at(field);
  if (!arr.is_array()) throw ParseError(std::string("field '") + field + "' must be an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) {
      throw ParseError(std::string("field '") + field + "[" + std::to_string(i) + "]' must be a number");
    }
    out.push_back(arr[i].get<double>());
  }
  return out;
}

}  // namespace

RadialPartitionProfile profile_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("profile document must be a JSON object");
  const std::vector<double> radii = number_array(doc, "radii", true);
  std::vector<double> offsets = number_array(doc, "offset", false);
  std::vector<double> weights = number_array(doc, "weights", false);
  if (radii.empty()) throw ParseError("field 'radii' must not be empty");

  if (!doc.contains("theta") || !doc.at("theta").is_array()) throw ParseError("field 'theta' must be an array");
  const auto& theta = doc.at("theta");
  if (theta.size() != radii.size()) throw ParseError("field 'theta' must have one entry per radius");
  if (offsets.empty()) offsets.assign(radii.size(), 0.0);
  if (offsets.size() != radii.size()) throw ParseError("field 'offset' must have one entry per radius");

  double r_max = std::max(kDefaultRadialCutoff, radii.back());
  if (doc.contains("r_max")) {
    if (!doc.at("r_max").is_number()) throw ParseError("field 'r_max' must be a number");
    r_max = doc.at("r_max").get<double>();
  }
  if (weights.empty()) weights = RadialPartitionProfile::cell_weights(radii, r_max);

  std::vector<ArcSection> sections;
  sections.reserve(radii.size());
  for (std::size_t k = 0; k < theta.size(); ++k) {
    const auto& row = theta[k];
    const std::string where = "theta[" + std::to_string(k) + "]";
    if (!row.is_array() || row.size() != 3) throw ParseError("field '" + where + "' must hold three angles");
    for (const auto& v : row) {
      if (!v.is_number()) throw ParseError("field '" + where + "' must hold numbers");
    }
    try {
      sections.push_back(ArcSection{ArcPartition(row[0].get<double>(), row[1].get<double>(), row[2].get<double>()),
                                    offsets[k]});
    } catch (const DomainError& e) {
      throw ParseError("field '" + where + "': " + e.what());
    }
  }
  try {
    return RadialPartitionProfile(radii, std::move(weights), std::move(sections), r_max);
  } catch (const GridError& e) {
    throw ParseError(std::string("invalid profile grid: ") + e.what());
  }
}

nlohmann::json profile_to_json(const RadialPartitionProfile& profile) {
  nlohmann::json theta = nlohmann::json::array();
  nlohmann::json offset = nlohmann::json::array();
  for (const auto& s : profile.sections()) {
    theta.push_back({s.arcs.theta[0], s.arcs.theta[1], s.arcs.theta[2]});
    offset.push_back(s.offset);
  }
  return {{"radii", profile.radii()},
          {"weights", profile.weights()},
          {"theta", theta},
          {"offset", offset},
          {"r_max", profile.r_max()}};
}

RadialPartitionProfile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open profile file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  try {
    return profile_from_json(doc);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace nsl
